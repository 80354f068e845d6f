#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fkdv/experiments.hpp"

namespace fkdv {

/// Version string written into every manifest.
const char* tool_version();

/// Summary of one run, stored as manifest.json next to the CSVs.
struct RunManifest {
  std::string tool = "fkdv";
  std::string version;
  std::string experiment;
  /// Resolved configuration, key -> value text.
  std::map<std::string, std::string> config;
  /// Not part of any hash.
  double wall_clock_seconds = 0.0;
  std::vector<Check> checks;
  std::vector<std::string> flags;
  /// FNV-1a of every CSV file written, by file name.
  std::map<std::string, std::string> file_hashes;
  /// FNV-1a over all CSV contents in file-name order.
  std::string result_hash;
  bool all_passed = true;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// CSV text of the series in one group: t,L,n,theta,value,classification.
std::string series_csv(const Report& report, const std::string& group);
std::string checks_csv(const Report& report);
std::string table_csv(const Table& table);

/// Writes one CSV per series group, checks.csv, one CSV per table and
/// manifest.json into dir (created if needed). An empty report writes only
/// the manifest. IO failures throw Error. Returns the manifest written.
RunManifest write_report(const Report& report,
                         const std::map<std::string, std::string>& config,
                         double wall_clock_seconds, const std::string& dir);

std::string to_json_text(const RunManifest& m);
RunManifest manifest_from_json_text(const std::string& text);
RunManifest read_manifest(const std::string& path);

}  // namespace fkdv
