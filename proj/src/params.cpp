#include "fkdv/params.hpp"

#include <cassert>
#include <cmath>

#include "fkdv/errors.hpp"

namespace fkdv {

DispersionParams::DispersionParams(double a) : a_(a) {
  if (!std::isfinite(a) || !(a > -2.5 && a < -2.0))
    throw InvalidArgument("dispersion exponent a must lie in (-5/2, -2)");
  assert(0.0 < theta_low() && theta_low() < 1.0);
  assert(1.0 < theta_mid() && theta_mid() < theta_max() && theta_max() < 1.5);
  assert(b_crit() > 1.0 / 3.0 && b_crit() < 0.5);
}

double DispersionParams::symbol(double xi) const noexcept {
  if (xi == 0.0) return 0.0;
  return xi * std::pow(std::abs(xi), 1.0 + a_);
}

double DispersionParams::symbol_slope(double xi) const noexcept {
  if (xi == 0.0) return 0.0;
  return (2.0 + a_) * std::pow(std::abs(xi), 1.0 + a_);
}

}  // namespace fkdv
