#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "fkdv/field.hpp"
#include "fkdv/params.hpp"

namespace fkdv {

enum class Scheme { IFRK4, PicardDuhamel };

const char* to_string(Scheme s);

/// Settings for u_t - d_x D^{1+a} u + u u_x = mu u_xx on the datum's grid.
struct SolveConfig {
  DispersionParams params{-2.25};
  double mu = 0.0;
  double T = 1.0;
  /// Time step; 0 selects default_dt().
  double dt = 0.0;
  /// Fraction of the half-spectrum kept around the quadratic term.
  double dealias = 2.0 / 3.0;
  double picard_tol = 1e-12;
  int picard_max_iter = 60;
  /// Steps per Picard window; 0 means the whole horizon in one window.
  int picard_window_steps = 0;
  Scheme scheme = Scheme::IFRK4;
  /// false drops the quadratic term (the flow becomes U_mu(t)).
  bool nonlinear = true;
  /// Times at which fields are stored, in (0, T]. Steps are shortened to
  /// land on them. Empty stores every step.
  std::vector<double> output_times;
  /// Called with every accepted state, t = 0 included, in time order.
  std::function<void(double t, const Field& u)> on_step;
};

/// Validates cfg (InvalidArgument on failure).
void validate(const SolveConfig& cfg);

/// min(0.5 dx, T/256). The dispersive symbol is bounded by dxi^{2+a} on
/// the lattice and the viscous part is integrated exactly, so the step is
/// set by accuracy, not stability.
double default_dt(const Grid& grid, double T);

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> fields;
  std::vector<double> mass;
  std::vector<double> energy;
  /// Picard iterations per window (empty for IFRK4).
  std::vector<int> iterations;
  /// Largest sup-norm change of the discrete Duhamel map when the fixed
  /// point is substituted back, over all windows (Picard only).
  double picard_residual = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  /// Largest relative |mass - mass0| and |energy - energy0| over all steps,
  /// including steps between stored times.
  double max_mass_drift = 0.0;
  double max_energy_drift = 0.0;
};

/// -1/2 d_x (P (P u)^2) where P keeps |k| <= floor(dealias n / 2).
Field nonlinear_rhs(const Field& u, double dealias);

/// Integrating-factor RK4. The datum's Nyquist mode is dropped; its zero
/// mode is carried unchanged. Non-finite values or sup norm above 1e150
/// throw BlowupDetected.
Trajectory evolve(const Field& phi, const SolveConfig& cfg);

/// Fixed point of the trapezoidal Duhamel map, window by window. Needs
/// mu > 0. Throws ContractionFailure when the iteration stalls or exceeds
/// picard_max_iter.
Trajectory picard_solve(const Field& phi, const SolveConfig& cfg);

/// Dispatches on cfg.scheme.
Trajectory solve(const Field& phi, const SolveConfig& cfg);

/// Majorant rho(t) = rho1(t) + (h + c_duhamel * int_0^t rho1)^2 where rho1
/// solves rho1' = c_s rho1^{3/2}, rho1(0) = ||phi||_{H^s}^2.
struct Majorant {
  double rho1_0 = 0.0;
  double homog = 0.0;
  double c_s = 1.0;
  double c_duhamel = 1.0;
  /// Blow-up time of rho1; +infinity when rho1_0 = 0.
  double T_star = std::numeric_limits<double>::infinity();

  double rho1(double t) const;
  double rho1_integral(double t) const;
  double rho(double t) const;
};

Majorant majorant(double hs_norm_sq, double homog_norm, double c_s,
                  double c_duhamel = 1.0);

struct ContinuationTable {
  std::vector<double> mus;
  /// distances[i] = sup over stored t of ||u_{mus[i]}(t) - u_{mus[i+1]}(t)||.
  std::vector<double> distances;
  bool strictly_decreasing = false;
};

/// Runs cfg once per mu (cfg.mu is overridden) with a common step and
/// common output times and compares neighbours. BlowupDetected from any
/// run is rethrown carrying that run's mu.
ContinuationTable mu_continuation(const Field& phi, std::span<const double> mus,
                                  const SolveConfig& cfg);

}  // namespace fkdv
