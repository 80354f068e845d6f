#include "fkdv/kernels.hpp"

#include <cmath>
#include <exception>
#include <mutex>

namespace fkdv::kernels {

namespace {

double weight_pow(double x, double theta) {
  if (theta == 0.0) return 1.0;
  return std::pow(std::abs(x), 2.0 * theta);
}

std::size_t block_count(std::size_t n) {
  return (n + kReductionBlock - 1) / kReductionBlock;
}

}  // namespace

namespace serial {

void apply_symbol(std::span<cplx> spectrum, std::span<const cplx> symbol) {
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= symbol[i];
}

double weighted_square_sum(std::span<const double> x,
                           std::span<const double> u, double theta,
                           double dx) {
  const std::size_t n = u.size();
  double total = 0.0;
  for (std::size_t b = 0; b < block_count(n); ++b) {
    double acc = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    for (std::size_t j = b * kReductionBlock; j < end; ++j)
      acc += weight_pow(x[j], theta) * u[j] * u[j];
    total += acc;
  }
  return total * dx;
}

double spectral_square_sum(std::span<const cplx> spectrum,
                           std::span<const double> weight,
                           double inv_length) {
  const std::size_t n = spectrum.size();
  double total = 0.0;
  for (std::size_t b = 0; b < block_count(n); ++b) {
    double acc = 0.0;
    const std::size_t end = std::min(n, (b + 1) * kReductionBlock);
    for (std::size_t j = b * kReductionBlock; j < end; ++j)
      acc += weight[j] * std::norm(spectrum[j]);
    total += acc;
  }
  return total * inv_length;
}

std::vector<double> map_points(std::span<const double> xs,
                               const std::function<double(double)>& f) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

}  // namespace serial

namespace parallel {

void apply_symbol(std::span<cplx> spectrum, std::span<const cplx> symbol) {
  const auto n = static_cast<std::ptrdiff_t>(spectrum.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) spectrum[i] *= symbol[i];
}

double weighted_square_sum(std::span<const double> x,
                           std::span<const double> u, double theta,
                           double dx) {
  const std::size_t n = u.size();
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    double acc = 0.0;
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    for (std::size_t j = begin; j < end; ++j)
      acc += weight_pow(x[j], theta) * u[j] * u[j];
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total * dx;
}

double spectral_square_sum(std::span<const cplx> spectrum,
                           std::span<const double> weight,
                           double inv_length) {
  const std::size_t n = spectrum.size();
  const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
  std::vector<double> partial(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    double acc = 0.0;
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(n, begin + kReductionBlock);
    for (std::size_t j = begin; j < end; ++j)
      acc += weight[j] * std::norm(spectrum[j]);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double v : partial) total += v;
  return total * inv_length;
}

std::vector<double> map_points(std::span<const double> xs,
                               const std::function<double(double)>& f) {
  std::vector<double> out(xs.size());
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace parallel
}  // namespace fkdv::kernels
