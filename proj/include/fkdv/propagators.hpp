#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fkdv/field.hpp"
#include "fkdv/params.hpp"

namespace fkdv {

/// Parameters of U_mu(t); mu = 0 gives the unitary group U(t).
struct PropagatorSpec {
  DispersionParams params;
  double mu = 0.0;
  double t = 0.0;
};

/// exp(t (i xi|xi|^{1+a} - mu xi^2)) on the lattice, FFT slot order.
///
/// The dispersive phase is 0 at xi = 0 (the mean is carried unchanged) and
/// at the Nyquist slot, where the odd symbol has no partner and its
/// symmetric average vanishes. The heat factor is kept everywhere. Both
/// conventions keep the discrete family an exact group/semigroup.
std::vector<cplx> propagator_symbol(const Grid& grid, const PropagatorSpec& spec);

/// U(t) f.
Field linear_propagate(const Field& f, double t, const DispersionParams& p);

/// U_mu(t) f for t >= 0 and 0 <= mu < 1. t < 0 with mu > 0 throws
/// BackwardHeat.
Field regularized_propagate(const Field& f, double t, const DispersionParams& p,
                            double mu);

/// (lambda / (mu t e))^lambda, the supremum over xi of xi^{2 lambda}
/// exp(-mu t xi^2), attained at xi^2 = lambda / (mu t).
double smoothing_gain(double lambda, double mu, double t);

/// Diagnostic raised (not thrown) when a field is a poor candidate for the
/// weight commutation identity on a torus.
struct IllConditionedProbe {
  /// Spectral mass fraction with |xi| < 1.
  double low_frequency_fraction = 0.0;
  /// Spectral mass fraction with |xi| > xi_max / 2.
  double high_band_fraction = 0.0;
  /// Sample mass fraction with |x| > 3L/8.
  double edge_fraction = 0.0;
  std::string message;
};

struct CommutationResult {
  /// ||x U_mu(t) f - U_mu(t)(x f - (2+a) t D^{1+a} f - 2 mu t f')|| / ||f||
  double residual = 0.0;
  std::optional<IllConditionedProbe> warning;
};

/// Measures how well the discrete operators satisfy the identity
///   x U_mu(t) f = U_mu(t)(x f - (2+a) t D^{1+a} f - 2 mu t d_x f).
/// The left side multiplies by x after propagating; the right side before.
CommutationResult weight_commutation_residual(const Field& f, double t,
                                              const DispersionParams& p,
                                              double mu);

/// Measured conditioning of f for the identity above; nullopt when every
/// fraction is below its threshold.
std::optional<IllConditionedProbe> commutation_conditioning(const Field& f);

}  // namespace fkdv
