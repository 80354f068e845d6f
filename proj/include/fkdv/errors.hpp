#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fkdv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A negative-order derivative under ZeroModePolicy::Reject met a field with
/// nonzero mean.
class MeanCarryingField : public Error {
 public:
  MeanCarryingField(double mean, double norm);
  double mean() const noexcept { return mean_; }

 private:
  double mean_;
};

class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

class BackwardHeat : public Error {
 public:
  using Error::Error;
};

class OrderOutOfRange : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class SingularPoint : public Error {
 public:
  using Error::Error;
};

class DegenerateProbe : public Error {
 public:
  using Error::Error;
};

class ContractionFailure : public Error {
 public:
  ContractionFailure(double last_ratio, int iterations, double window_start);
  double last_ratio() const noexcept { return last_ratio_; }
  int iterations() const noexcept { return iterations_; }
  double window_start() const noexcept { return window_start_; }

 private:
  double last_ratio_;
  int iterations_;
  double window_start_;
};

class BlowupDetected : public Error {
 public:
  explicit BlowupDetected(double last_valid_time,
                          std::optional<double> mu = std::nullopt);
  double last_valid_time() const noexcept { return last_valid_time_; }
  std::optional<double> mu() const noexcept { return mu_; }

 private:
  double last_valid_time_;
  std::optional<double> mu_;
};

/// Base for configuration problems; carries the offending line when known
/// (0 means "not tied to a line").
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownKey : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class OutOfRange : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class MissingRequired : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace fkdv
