#pragma once

#include "fkdv/experiments.hpp"

namespace fkdv {

/// Sweep sizes of the battery. The defaults keep a full run to seconds.
struct BatteryConfig {
  /// Random band-limited fields for the propagator algebra.
  int random_fields = 20;
  /// Random (lambda, mu t) pairs for the smoothing bound.
  int smoothing_pairs = 20;
  /// Points in logspace(0.05, 50) for the phase bound.
  int phase_points = 40;
  /// Points in logspace(0.01, 10) for the low-frequency decay check.
  int low_freq_points = 40;
  unsigned long long seed = 20240611;
};

/// Runs the checks of the propagator, Stein and norm modules at exponent p
/// and collects one pass/fail per check with its numbers as tables. A check
/// that throws is recorded as failed; the rest still run.
Report bounds_battery(const DispersionParams& p, const BatteryConfig& cfg = {});

}  // namespace fkdv
