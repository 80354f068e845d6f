#pragma once

namespace fkdv {

/// Dispersion exponent a of  u_t - d_x D^{a+1} u + u u_x = 0, restricted to
/// the negative range -5/2 < a < -2, together with the critical exponents
/// the decay theory is organised around.
class DispersionParams {
 public:
  explicit DispersionParams(double a);

  double a() const noexcept { return a_; }

  /// (2+a)/(1+a): smallest homogeneous index used by the existence theory.
  double theta_low() const noexcept { return (2.0 + a_) / (1.0 + a_); }
  /// -3/(2(1+a)): decay ceiling of the contraction argument.
  double theta_mid() const noexcept { return -3.0 / (2.0 * (1.0 + a_)); }
  /// (1+2a)/(2(1+a)): absolute decay ceiling.
  double theta_max() const noexcept {
    return (1.0 + 2.0 * a_) / (2.0 * (1.0 + a_));
  }
  /// -1/(p(1+a)): Stein-derivative order beyond which the phase times a
  /// bump leaves L^p. The default p = 2 gives theta_max - 1.
  double b_crit(double p = 2.0) const noexcept {
    return -1.0 / (p * (1.0 + a_));
  }

  /// Dispersive symbol xi |xi|^{1+a}. Set to 0 at xi = 0 where it diverges.
  double symbol(double xi) const noexcept;
  /// d/dxi of the symbol, (2+a)|xi|^{1+a}; 0 at xi = 0.
  double symbol_slope(double xi) const noexcept;

  friend bool operator==(const DispersionParams&,
                         const DispersionParams&) = default;

 private:
  double a_;
};

}  // namespace fkdv
