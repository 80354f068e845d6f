#include "fkdv/config.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "fkdv/errors.hpp"

namespace fkdv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

double parse_number(const std::string& text, std::size_t line) {
  std::string s = trim(text);
  double factor = 1.0;
  if (s == "pi") return std::numbers::pi;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "*pi") == 0) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 3));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'", line);
  }
  if (used != s.size()) throw ParseError("not a number: '" + text + "'", line);
  return v * factor;
}

std::vector<double> parse_list(const std::string& text, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number(item, line));
  if (out.empty()) throw ParseError("empty list", line);
  return out;
}

long parse_integer(const std::string& text, std::size_t line) {
  const double v = parse_number(text, line);
  if (v != std::floor(v)) throw ParseError("not an integer: '" + text + "'", line);
  return static_cast<long>(v);
}

bool parse_bool(const std::string& text, std::size_t line) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError("not a boolean: '" + text + "'", line);
}

struct Entry {
  std::string value;
  std::size_t line;
};

const std::set<std::string> kKeys = {
    "name", "a", "datum", "datum.amplitude", "datum.sigma", "datum.k",
    "datum.highpass", "datum.width", "datum.gamma", "datum.file",
    "ladder.length0", "ladder.n0", "ladder.rungs", "ladder.padding", "thetas",
    "times", "zero_plus", "solver.mu", "solver.T", "solver.dt",
    "solver.dealias", "solver.scheme", "solver.nonlinear", "solver.picard_tol",
    "solver.picard_max_iter", "solver.picard_window_steps", "probe.t1",
    "probe.t2", "mu_study.mus"};

const std::map<std::string, std::set<std::string>> kDatumKeys = {
    {"gaussian", {"datum.amplitude", "datum.sigma", "datum.k", "datum.highpass"}},
    {"bump_spectrum", {"datum.amplitude", "datum.width"}},
    {"algebraic", {"datum.amplitude", "datum.gamma", "datum.k", "datum.highpass"}},
    {"custom", {"datum.file"}}};

CustomDatum read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open custom datum file '" + path + "'");
  CustomDatum d;
  std::string row;
  std::size_t line = 0;
  while (std::getline(in, row)) {
    ++line;
    row = trim(row.substr(0, row.find('#')));
    if (row.empty()) continue;
    for (char& c : row)
      if (c == ',') c = ' ';
    std::istringstream ss(row);
    double x = 0.0, v = 0.0;
    if (!(ss >> x >> v))
      throw ParseError("custom datum row needs 'x value' in " + path, line);
    d.xs.push_back(x);
    d.values.push_back(v);
  }
  return d;
}

}  // namespace

void rebuild_ladder(RunConfig& cfg) {
  cfg.spec.ladder = doubling_ladder(cfg.length0, cfg.n0, cfg.rungs);
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir,
                            const KeyValues& overrides, const KeyValues& defaults) {
  std::map<std::string, Entry> kv;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(raw.substr(0, raw.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError("expected 'key = value'", line);
    if (!kKeys.count(key)) throw UnknownKey("unknown key '" + key + "'", line);
    if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line);
    kv[key] = {value, line};
  }
  for (const auto& [k, v] : overrides) {
    if (!kKeys.count(k)) throw UnknownKey("unknown key '" + k + "'", 0);
    kv[k] = {trim(v), 0};
  }
  const auto datum_kind = kv.count("datum") ? kv["datum"].value
                          : defaults.count("datum") ? trim(defaults.at("datum"))
                                                    : std::string();
  const auto datum_keys = kDatumKeys.find(datum_kind);
  for (const auto& [k, v] : defaults) {
    if (!kKeys.count(k)) throw UnknownKey("unknown key '" + k + "'", 0);
    if (kv.count(k)) continue;
    if (k.rfind("datum.", 0) == 0 &&
        (datum_keys == kDatumKeys.end() || !datum_keys->second.count(k)))
      continue;
    kv[k] = {trim(v), 0};
  }

  if (!kv.count("a")) throw MissingRequired("missing required key 'a'", 0);
  if (!kv.count("datum")) throw MissingRequired("missing required key 'datum'", 0);

  RunConfig cfg;
  ExperimentSpec& s = cfg.spec;
  auto num = [&](const std::string& k) { return parse_number(kv[k].value, kv[k].line); };
  auto range = [&](const std::string& k, bool ok, const std::string& what) {
    if (!ok) throw OutOfRange(k + " " + what, kv.count(k) ? kv[k].line : 0);
  };

  const double a = num("a");
  range("a", a > -2.5 && a < -2.0, "must lie in the open interval (-5/2, -2)");
  s.params = DispersionParams(a);
  if (kv.count("name")) s.name = kv["name"].value;

  const std::string kind = kv["datum"].value;
  const auto allowed = kDatumKeys.find(kind);
  if (allowed == kDatumKeys.end())
    throw OutOfRange("datum must be gaussian, bump_spectrum, algebraic or custom",
                     kv["datum"].line);
  for (const auto& [k, e] : kv)
    if (k.rfind("datum.", 0) == 0 && !allowed->second.count(k))
      throw UnknownKey("'" + k + "' does not apply to datum " + kind, e.line);
  auto opt = [&](const std::string& k, double def) { return kv.count(k) ? num(k) : def; };
  if (kind == "gaussian") {
    GaussianDatum d{opt("datum.amplitude", 1.0), opt("datum.sigma", 1.0),
                    opt("datum.k", 0.0), opt("datum.highpass", 0.0)};
    range("datum.sigma", d.sigma > 0.0, "must be positive");
    range("datum.highpass", d.highpass >= 0.0, "must be >= 0");
    s.datum = d;
  } else if (kind == "bump_spectrum") {
    BumpSpectrumDatum d{opt("datum.amplitude", 1.0), opt("datum.width", 1.0)};
    range("datum.width", d.width > 0.0, "must be positive");
    s.datum = d;
  } else if (kind == "algebraic") {
    AlgebraicDatum d{opt("datum.amplitude", 1.0), opt("datum.gamma", 1.7),
                     opt("datum.k", 0.0), opt("datum.highpass", 0.0)};
    range("datum.gamma", d.gamma > 0.5, "must exceed 1/2");
    range("datum.highpass", d.highpass >= 0.0, "must be >= 0");
    s.datum = d;
  } else {
    if (!kv.count("datum.file"))
      throw MissingRequired("custom datum needs 'datum.file'", kv["datum"].line);
    std::filesystem::path f(kv["datum.file"].value);
    if (f.is_relative()) f = std::filesystem::path(base_dir) / f;
    cfg.datum_file = kv["datum.file"].value;
    s.datum = read_samples(f.string());
  }

  cfg.length0 = opt("ladder.length0", cfg.length0);
  range("ladder.length0", cfg.length0 > 0.0, "must be positive");
  if (kv.count("ladder.n0")) {
    const long n0 = parse_integer(kv["ladder.n0"].value, kv["ladder.n0"].line);
    range("ladder.n0", n0 >= 4 && n0 % 2 == 0, "must be an even integer >= 4");
    cfg.n0 = static_cast<std::size_t>(n0);
  }
  if (kv.count("ladder.rungs")) {
    const long r = parse_integer(kv["ladder.rungs"].value, kv["ladder.rungs"].line);
    range("ladder.rungs", r >= 2 && r <= 16, "must lie in [2, 16]");
    cfg.rungs = static_cast<int>(r);
  }
  if (kv.count("ladder.padding")) {
    const long pd = parse_integer(kv["ladder.padding"].value, kv["ladder.padding"].line);
    range("ladder.padding", pd >= 1 && pd <= 64, "must lie in [1, 64]");
    s.padding = static_cast<int>(pd);
  }
  rebuild_ladder(cfg);

  s.thetas = kv.count("thetas") ? parse_list(kv["thetas"].value, kv["thetas"].line)
                                : std::vector<double>{0.3, 0.5};
  for (double th : s.thetas)
    range("thetas", th >= 0.0 && th <= s.params.theta_max() + kThetaMargin,
          "must lie in [0, theta_max + " + fmt(kThetaMargin) + "]");
  s.times = kv.count("times") ? parse_list(kv["times"].value, kv["times"].line)
                              : std::vector<double>{1.0};
  for (double t : s.times) range("times", t > 0.0, "must be positive");
  s.zero_plus = opt("zero_plus", s.zero_plus);
  range("zero_plus", s.zero_plus > 0.0 && s.zero_plus < 1.0, "must lie in (0, 1)");

  SolveConfig& sc = s.solver;
  sc.params = s.params;
  sc.mu = opt("solver.mu", 0.0);
  range("solver.mu", sc.mu >= 0.0 && sc.mu < 1.0, "must lie in [0, 1)");
  double tmax = 0.0;
  for (double t : s.times) tmax = std::max(tmax, t);
  sc.T = opt("solver.T", tmax);
  range("solver.T", sc.T > 0.0, "must be positive");
  sc.dt = opt("solver.dt", 0.0);
  range("solver.dt", sc.dt >= 0.0 && sc.dt <= sc.T, "must lie in [0, T]");
  sc.dealias = opt("solver.dealias", sc.dealias);
  range("solver.dealias", sc.dealias > 0.5 && sc.dealias <= 1.0, "must lie in (1/2, 1]");
  if (kv.count("solver.scheme")) {
    const std::string v = kv["solver.scheme"].value;
    if (v == "ifrk4") sc.scheme = Scheme::IFRK4;
    else if (v == "picard") sc.scheme = Scheme::PicardDuhamel;
    else range("solver.scheme", false, "must be ifrk4 or picard");
  }
  if (kv.count("solver.nonlinear"))
    sc.nonlinear = parse_bool(kv["solver.nonlinear"].value, kv["solver.nonlinear"].line);
  sc.picard_tol = opt("solver.picard_tol", sc.picard_tol);
  range("solver.picard_tol", sc.picard_tol > 0.0, "must be positive");
  if (kv.count("solver.picard_max_iter")) {
    const long v = parse_integer(kv["solver.picard_max_iter"].value,
                                 kv["solver.picard_max_iter"].line);
    range("solver.picard_max_iter", v >= 1, "must be >= 1");
    sc.picard_max_iter = static_cast<int>(v);
  }
  if (kv.count("solver.picard_window_steps")) {
    const long v = parse_integer(kv["solver.picard_window_steps"].value,
                                 kv["solver.picard_window_steps"].line);
    range("solver.picard_window_steps", v >= 0, "must be >= 0");
    sc.picard_window_steps = static_cast<int>(v);
  }

  if (kv.count("probe.t1")) cfg.t1 = num("probe.t1");
  if (kv.count("probe.t2")) cfg.t2 = num("probe.t2");
  const double t1 = cfg.t1.value_or(0.25 * sc.T), t2 = cfg.t2.value_or(0.75 * sc.T);
  range("probe.t2", t2 > t1 && t1 >= 0.0, "must exceed probe.t1 >= 0");
  if (kv.count("mu_study.mus"))
    cfg.mus = parse_list(kv["mu_study.mus"].value, kv["mu_study.mus"].line);
  for (double m : cfg.mus) range("mu_study.mus", m > 0.0 && m < 1.0, "must lie in (0, 1)");
  return cfg;
}

RunConfig parse_config(const std::string& path, const KeyValues& overrides,
                       const KeyValues& defaults) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config_text(ss.str(), dir.empty() ? "." : dir.string(), overrides,
                           defaults);
}

std::map<std::string, std::string> echo(const ExperimentSpec& s) {
  std::map<std::string, std::string> m;
  m["name"] = s.name;
  m["a"] = fmt(s.params.a());
  m["datum"] = datum_name(s.datum);
  if (const auto* g = std::get_if<GaussianDatum>(&s.datum)) {
    m["datum.amplitude"] = fmt(g->amplitude);
    m["datum.sigma"] = fmt(g->sigma);
    m["datum.k"] = fmt(g->k);
    m["datum.highpass"] = fmt(g->highpass);
  } else if (const auto* b = std::get_if<BumpSpectrumDatum>(&s.datum)) {
    m["datum.amplitude"] = fmt(b->amplitude);
    m["datum.width"] = fmt(b->width);
  } else if (const auto* al = std::get_if<AlgebraicDatum>(&s.datum)) {
    m["datum.amplitude"] = fmt(al->amplitude);
    m["datum.gamma"] = fmt(al->gamma);
    m["datum.k"] = fmt(al->k);
    m["datum.highpass"] = fmt(al->highpass);
  } else {
    m["datum.samples"] = std::to_string(std::get<CustomDatum>(s.datum).xs.size());
  }
  std::vector<double> lengths, sizes;
  for (const Grid& g : s.ladder) {
    lengths.push_back(g.length());
    sizes.push_back(static_cast<double>(g.size()));
  }
  m["ladder.lengths"] = fmt_list(lengths);
  m["ladder.sizes"] = fmt_list(sizes);
  m["ladder.padding"] = std::to_string(s.padding);
  m["thetas"] = fmt_list(s.thetas);
  m["times"] = fmt_list(s.times);
  m["zero_plus"] = fmt(s.zero_plus);
  const SolveConfig& sc = s.solver;
  m["solver.mu"] = fmt(sc.mu);
  m["solver.T"] = fmt(sc.T);
  m["solver.dt"] = fmt(sc.dt);
  m["solver.dealias"] = fmt(sc.dealias);
  m["solver.scheme"] = to_string(sc.scheme);
  m["solver.nonlinear"] = sc.nonlinear ? "true" : "false";
  m["solver.picard_tol"] = fmt(sc.picard_tol);
  m["solver.picard_max_iter"] = std::to_string(sc.picard_max_iter);
  m["solver.picard_window_steps"] = std::to_string(sc.picard_window_steps);
  return m;
}

std::map<std::string, std::string> echo(const RunConfig& cfg) {
  auto m = echo(cfg.spec);
  m["ladder.length0"] = fmt(cfg.length0);
  m["ladder.n0"] = std::to_string(cfg.n0);
  m["ladder.rungs"] = std::to_string(cfg.rungs);
  m["probe.t1"] = fmt(cfg.t1.value_or(0.25 * cfg.spec.solver.T));
  m["probe.t2"] = fmt(cfg.t2.value_or(0.75 * cfg.spec.solver.T));
  m["mu_study.mus"] = fmt_list(cfg.mus);
  if (!cfg.datum_file.empty()) m["datum.file"] = cfg.datum_file;
  return m;
}

}  // namespace fkdv
