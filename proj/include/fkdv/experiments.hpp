#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fkdv/field.hpp"
#include "fkdv/ladder.hpp"
#include "fkdv/params.hpp"
#include "fkdv/solver.hpp"
#include "fkdv/stein.hpp"

namespace fkdv {

/// A exp(-(x/sigma)^2) cos(k x). With highpass > 0 the spectrum is
/// multiplied by a smooth step that is 0 for |xi| < highpass and 1 for
/// |xi| > 3 highpass.
struct GaussianDatum {
  double amplitude = 1.0;
  double sigma = 1.0;
  double k = 0.0;
  double highpass = 0.0;
};

/// Datum whose transform is A on |xi| <= width and 0 for |xi| >= 2 width,
/// joined by a smooth step. Schwartz in x but with D^{(1+a) theta} of it in
/// L^2 only for theta < b_crit.
struct BumpSpectrumDatum {
  double amplitude = 1.0;
  double width = 1.0;
};

/// A <x>^{-gamma} cos(k x), optionally high-passed as for GaussianDatum.
/// |x|^theta times it is in L^2 exactly when theta < gamma - 1/2.
struct AlgebraicDatum {
  double amplitude = 1.0;
  double gamma = 1.7;
  double k = 0.0;
  double highpass = 0.0;
};

/// Samples (x_i, v_i) with x strictly increasing, linearly interpolated and
/// extended by 0.
struct CustomDatum {
  std::vector<double> xs;
  std::vector<double> values;
};

using Datum = std::variant<GaussianDatum, BumpSpectrumDatum, AlgebraicDatum,
                           CustomDatum>;

const char* datum_name(const Datum& d);

/// The datum sampled on grid.
Field make_datum(const Datum& d, const Grid& grid);

/// Largest theta with D^{(1+a) theta} phi and |x|^theta phi both in L^2
/// (+infinity when every theta qualifies); nullopt for custom samples.
std::optional<double> datum_decay_class(const Datum& d,
                                        const DispersionParams& p);

struct ExperimentSpec {
  std::string name = "experiment";
  DispersionParams params{-2.25};
  Datum datum = BumpSpectrumDatum{};
  /// Boxes on which the truncated norms are taken; strictly increasing in
  /// L with a common spacing.
  std::vector<Grid> ladder;
  /// Each rung is computed on a torus `padding` times longer (same spacing)
  /// and its norms are restricted to the rung box, so mass leaving the box
  /// does not wrap back into it. 1 uses the rung box itself.
  int padding = 1;
  std::vector<double> thetas;
  std::vector<double> times;
  /// params is replaced by `params` above; T by the largest time needed.
  SolveConfig solver;
  /// Stand-in for the exponent 0+ of the two-time identity.
  double zero_plus = 0.05;
};

/// Margin allowed above theta_max in ExperimentSpec::thetas.
inline constexpr double kThetaMargin = 0.25;

/// InvalidArgument on a malformed spec.
void validate(const ExperimentSpec& spec);

/// Values of one quantity on every rung of the ladder.
struct ClassifiedSeries {
  /// Output file stem; all series of a group share one CSV.
  std::string group;
  std::string label;
  double t = 0.0;
  double theta = 0.0;
  std::vector<double> lengths;
  std::vector<std::size_t> sizes;
  std::vector<double> values;
  SeriesClass classification = SeriesClass::Inconclusive;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

/// Auxiliary numeric table, written as its own CSV.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string experiment;
  ExperimentSpec spec;
  std::vector<ClassifiedSeries> series;
  std::vector<Check> checks;
  std::vector<Table> tables;
  std::vector<std::string> flags;

  bool all_passed() const;
  const ClassifiedSeries* find(const std::string& group, double t,
                               double theta) const;
};

/// || |x|^theta u || over [-half_width, half_width).
double windowed_weighted_norm(const Field& u, double theta, double half_width);

/// Truncated ||x|^theta u(t)|| for every theta, time and rung, from the
/// linear group (group "linear") and, when spec.solver.nonlinear, from the
/// full flow (group "nonlinear"). When the datum's decay class is known,
/// each series is checked against CONVERGENT below it and DIVERGENT above.
Report decay_threshold_sweep(const ExperimentSpec& spec);

/// Truncated ||x|^{0+} U(t_j)(x phi - (2+a) t_j D^{1+a} phi)|| at t1 and t2
/// (group "identity"), plus the ladder behaviour of the four quantities of
/// the two equivalent datum conditions for every theta in (1, theta_max).
Report ucp_two_time_probe(const ExperimentSpec& spec, double t1, double t2);
/// t1 = 0.25 T, t2 = 0.75 T.
Report ucp_two_time_probe(const ExperimentSpec& spec);

/// Truncated ||x|^theta u(t)|| at theta_max - 0.05 and theta_max for two
/// times, with the Stein non-integrability table at b_crit as witness.
Report ucp_critical_vanishing_probe(const ExperimentSpec& spec, double t1,
                                    double t2);
Report ucp_critical_vanishing_probe(const ExperimentSpec& spec);

/// Integral_0^t U_mu(t - s) d_x(u^2)(s) ds accumulated by the trapezoid rule
/// over the solver's steps (group "duhamel"), next to the solution
/// ("solution") and the linear part ("linear"), at every theta and time.
/// The largest theta is checked for CONVERGENT; the integral is also
/// compared with 2 (U_mu(t) phi - u(t)).
Report extra_decay_check(const ExperimentSpec& spec);

/// Relative tolerance for the Duhamel cross-check.
inline constexpr double kDuhamelCrossCheckTol = 1e-3;

}  // namespace fkdv
