#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fkdv/fft.hpp"
#include "fkdv/params.hpp"

namespace fkdv {

/// Quadrature controls for the Stein derivative integral.
struct QuadConfig {
  /// Half-width of the window around x replaced by the Taylor correction.
  /// Shrunk automatically near singular points of the profile.
  double inner_cut = 1e-5;
  /// Radius covered by the graded near-field mesh; beyond it dyadic shells
  /// are added until the tail is negligible.
  double far_limit = 64.0;
  /// Initial panels per interval (>= 8 points each via an 8-point rule).
  int panels = 8;
  /// Relative agreement demanded between successive panel doublings.
  double rel_tol = 1e-6;
  int max_doublings = 7;
  int max_shells = 400;
  /// Dyadic grading levels toward each singular point of the profile.
  int singular_depth = 60;
};

/// A complex function of one real variable together with the points where
/// it is singular or fails to be smooth. The quadrature grades its mesh
/// toward those points instead of trusting polynomial accuracy there.
struct Profile {
  std::function<cplx(double)> g;
  std::vector<double> singular_points;
};

/// I(x) = integral over y of |g(x) - g(y)|^2 / |x - y|^{1+2b}.
double stein_integral(const Profile& g, double b, double x,
                      const QuadConfig& q = {});

/// Stein derivative sqrt(I(x)). b must lie in (0, 1) (OrderOutOfRange).
double stein_derivative(const Profile& g, double b, double x,
                        const QuadConfig& q = {});

/// C_b = 2 * integral over R of (1 - cos u)/|u|^{1+2b}, so that
/// ||Stein_b f||^2 = C_b ||D^b f||^2. Computed by quadrature.
double gagliardo_constant(double b);

/// ||Stein_b g||^2 over R. The x integral runs over [-X, X] and the part
/// |x| > X is added from the even moments of |g|^2; g must vanish at
/// infinity and be negligible outside [-X/2, X/2].
double stein_norm_squared(const Profile& g, double b, double half_width,
                          const QuadConfig& q = {});

/// exp(i t y|y|^{1+a}); singular (infinitely oscillating) at 0.
Profile phase_profile(const DispersionParams& p, double t);

/// C-infinity step: 0 for s <= 0, 1 for s >= 1.
double smooth_step(double s);

/// Smooth bump: 1 on [-1/2, 1/2], 0 outside (-1, 1).
double standard_bump(double x);

struct PhaseBoundReport {
  double max_ratio = 0.0;
  double argmax = 0.0;
  std::vector<double> ratios;
};

/// Stein_b(phase)(x) / (<t> |x|^{(1+a) b}) at every x in xs, with <t> =
/// sqrt(1 + t^2). A zero in xs throws SingularPoint.
PhaseBoundReport phase_bound_ratio(const DispersionParams& p, double b,
                                   double t, std::span<const double> xs,
                                   const QuadConfig& q = {});

enum class ProbeClass { Divergent, Bounded, Inconclusive };

const char* to_string(ProbeClass c);

struct NonintegrabilityTable {
  std::vector<double> deltas;
  /// (integral over delta < |x| < 1/2 of Stein_b(phase * bump)^p)^{1/p}
  std::vector<double> values;
  ProbeClass classification = ProbeClass::Inconclusive;
};

/// Classifies truncated values v_k at cutoffs delta_k. Growth is normalized
/// to one halving of delta. Divergent: every step grows by at least 5%.
/// Bounded: the last step changes by less than 1%.
ProbeClass classify_cutoff_series(std::span<const double> deltas,
                                  std::span<const double> values);

/// t = 0 throws DegenerateProbe; deltas must decrease strictly in (0, 1/2).
NonintegrabilityTable nonintegrability_probe(const DispersionParams& p,
                                             double b, double t, double lp,
                                             std::span<const double> deltas,
                                             const QuadConfig& q = {});

/// start * 2^{-k} for k = 0..count-1.
std::vector<double> halving_cutoffs(double start, int count);

struct LowFreqReport {
  double max_product = 0.0;
  double argmax = 0.0;
  std::vector<double> products;
};

/// max over xs of Stein_theta(h)(x) |x|^{beta+theta} with h(y) = |y|^{-beta}
/// bump(y), or sgn(y)|y|^{-beta} bump(y) when `signed_variant`.
LowFreqReport low_freq_decay_check(double beta, double theta,
                                   std::span<const double> xs,
                                   bool signed_variant,
                                   const QuadConfig& q = {});

/// n points spaced evenly in log between lo and hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace fkdv
