#include "fkdv/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fkdv/errors.hpp"

namespace fkdv {

Grid::Grid(std::size_t n, double length) : n_(n), length_(length) {
  if (n < 8 || (n & (n - 1)) != 0)
    throw InvalidArgument("grid size must be a power of two >= 8, got " +
                          std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw InvalidArgument("grid length must be positive and finite");
}

double Grid::dxi() const noexcept { return 2.0 * std::numbers::pi / length_; }

double Grid::xi(std::size_t i) const noexcept {
  return dxi() * static_cast<double>(wavenumber(i));
}

double Grid::xi_max() const noexcept {
  return std::numbers::pi * static_cast<double>(n_) / length_;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = x(j);
  return out;
}

std::vector<double> Grid::frequencies() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = xi(i);
  return out;
}

}  // namespace fkdv
