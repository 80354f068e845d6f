#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fkdv/experiments.hpp"

namespace fkdv {

/// A parsed run configuration with every default filled in.
///
/// File format: one `key = value` per line, `#` starts a comment, lists are
/// comma separated, numbers may carry a `*pi` factor (`256*pi`). Keys:
///
///   name, a (required), datum (required: gaussian | bump_spectrum |
///   algebraic | custom), datum.amplitude, datum.sigma, datum.k,
///   datum.highpass, datum.width, datum.gamma, datum.file,
///   ladder.length0, ladder.n0, ladder.rungs, ladder.padding,
///   thetas, times, zero_plus,
///   solver.mu, solver.T, solver.dt, solver.dealias, solver.scheme,
///   solver.nonlinear, solver.picard_tol, solver.picard_max_iter,
///   solver.picard_window_steps,
///   probe.t1, probe.t2, mu_study.mus
///
/// datum.* keys that do not belong to the chosen datum are rejected.
struct RunConfig {
  ExperimentSpec spec;
  double length0 = 256.0;
  std::size_t n0 = 2048;
  int rungs = 4;
  /// Two-time probe times; unset means 0.25 T and 0.75 T.
  std::optional<double> t1, t2;
  std::vector<double> mus{1e-1, 1e-2, 1e-3, 1e-4};
  /// Source of a custom datum, echoed instead of the samples.
  std::string datum_file;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses configuration text. `overrides` replace keys of the text;
/// `defaults` fill keys absent from both (datum.* defaults that do not apply
/// to the chosen datum are dropped). Errors: ParseError (malformed line,
/// with its number), UnknownKey, OutOfRange, MissingRequired.
RunConfig parse_config_text(const std::string& text,
                            const std::string& base_dir = ".",
                            const KeyValues& overrides = {},
                            const KeyValues& defaults = {});

/// Reads and parses a configuration file; custom datum files are resolved
/// relative to it.
RunConfig parse_config(const std::string& path, const KeyValues& overrides = {},
                       const KeyValues& defaults = {});

/// Every setting that influences a number, as key -> value text.
std::map<std::string, std::string> echo(const ExperimentSpec& spec);
std::map<std::string, std::string> echo(const RunConfig& cfg);

/// Rebuilds spec.ladder from length0, n0 and rungs.
void rebuild_ladder(RunConfig& cfg);

}  // namespace fkdv
