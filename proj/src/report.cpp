#include "fkdv/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fkdv/errors.hpp"

#ifndef FKDV_VERSION
#define FKDV_VERSION "0.0.0"
#endif

namespace fkdv {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
  return out;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + p.string() + "'");
}

}  // namespace

const char* tool_version() { return FKDV_VERSION; }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string series_csv(const Report& report, const std::string& group) {
  std::string out = "t,L,n,theta,value,classification\n";
  for (const ClassifiedSeries& s : report.series) {
    if (s.group != group) continue;
    for (std::size_t i = 0; i < s.values.size(); ++i)
      out += fmt(s.t) + "," + fmt(s.lengths[i]) + "," + std::to_string(s.sizes[i]) +
             "," + fmt(s.theta) + "," + fmt(s.values[i]) + "," +
             to_string(s.classification) + "\n";
  }
  return out;
}

std::string checks_csv(const Report& report) {
  std::string out = "name,passed,detail\n";
  for (const Check& c : report.checks)
    out += csv_field(c.name) + "," + (c.passed ? "true" : "false") + "," +
           csv_field(c.detail) + "\n";
  return out;
}

std::string table_csv(const Table& table) {
  std::string out;
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    out += (j ? "," : "") + csv_field(table.columns[j]);
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + fmt(row[j]);
    out += "\n";
  }
  return out;
}

RunManifest write_report(const Report& report,
                         const std::map<std::string, std::string>& config,
                         double wall_clock_seconds, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());

  std::map<std::string, std::string> files;
  std::set<std::string> groups;
  for (const ClassifiedSeries& s : report.series) groups.insert(s.group);
  for (const std::string& g : groups) files["series_" + safe_name(g) + ".csv"] = series_csv(report, g);
  for (const Table& t : report.tables) files["table_" + safe_name(t.name) + ".csv"] = table_csv(t);
  if (!report.checks.empty()) files["checks.csv"] = checks_csv(report);

  RunManifest m;
  m.version = tool_version();
  m.experiment = report.experiment;
  m.config = config;
  m.wall_clock_seconds = wall_clock_seconds;
  m.checks = report.checks;
  m.flags = report.flags;
  m.all_passed = report.all_passed();
  std::string all;
  for (const auto& [name, text] : files) {
    write_file(fs::path(dir) / name, text);
    m.file_hashes[name] = fnv1a_hex(text);
    all += name + "\n" + text;
  }
  m.result_hash = fnv1a_hex(all);
  write_file(fs::path(dir) / "manifest.json", to_json_text(m));
  return m;
}

std::string to_json_text(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["experiment"] = m.experiment;
  j["config"] = m.config;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["all_passed"] = m.all_passed;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : m.checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["flags"] = m.flags;
  j["file_hashes"] = m.file_hashes;
  j["result_hash"] = m.result_hash;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json_text(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.experiment = j.at("experiment").get<std::string>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    m.all_passed = j.at("all_passed").get<bool>();
    for (const auto& c : j.at("checks"))
      m.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                          c.at("detail").get<std::string>()});
    m.flags = j.at("flags").get<std::vector<std::string>>();
    m.file_hashes = j.at("file_hashes").get<std::map<std::string, std::string>>();
    m.result_hash = j.at("result_hash").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what(), 0);
  }
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return manifest_from_json_text(ss.str());
}

}  // namespace fkdv
