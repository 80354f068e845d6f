#include "fkdv/errors.hpp"

#include <sstream>

namespace fkdv {

namespace {

std::string describe_mean(double mean, double norm) {
  std::ostringstream os;
  os << "field carries mean " << mean << " (norm " << norm
     << ") under ZeroModePolicy::Reject";
  return os.str();
}

std::string describe_contraction(double ratio, int iterations, double start) {
  std::ostringstream os;
  os << "Picard iteration did not contract on the window starting at t="
     << start << " after " << iterations << " iterations (last ratio "
     << ratio << "); shorten T or the window";
  return os.str();
}

std::string describe_blowup(double t, std::optional<double> mu) {
  std::ostringstream os;
  os << "non-finite or overflowing state after t=" << t;
  if (mu) os << " (mu=" << *mu << ")";
  return os.str();
}

std::string with_line(const std::string& what, std::size_t line) {
  if (line == 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

MeanCarryingField::MeanCarryingField(double mean, double norm)
    : Error(describe_mean(mean, norm)), mean_(mean) {}

ContractionFailure::ContractionFailure(double last_ratio, int iterations,
                                       double window_start)
    : Error(describe_contraction(last_ratio, iterations, window_start)),
      last_ratio_(last_ratio),
      iterations_(iterations),
      window_start_(window_start) {}

BlowupDetected::BlowupDetected(double last_valid_time, std::optional<double> mu)
    : Error(describe_blowup(last_valid_time, mu)),
      last_valid_time_(last_valid_time),
      mu_(mu) {}

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : Error(with_line(what, line)), line_(line) {}

}  // namespace fkdv
