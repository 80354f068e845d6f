#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkdv/field.hpp"
#include "fkdv/ladder.hpp"
#include "fkdv/params.hpp"
#include "fkdv/spectral.hpp"

namespace fkdv {

enum class NormKind { Mass, Energy, Sobolev, Homogeneous, Weighted, Z, ScriptZ };

const char* to_string(NormKind k);

/// Which functional to evaluate. `s` is the Sobolev index (Sobolev, Z,
/// ScriptZ), `r` the homogeneous order (Homogeneous), `theta` the decay
/// index (Weighted, Z, ScriptZ).
struct NormSpec {
  NormKind kind = NormKind::Mass;
  double s = 0.0;
  double r = 0.0;
  double theta = 0.0;
  ZeroModePolicy policy = ZeroModePolicy::Annihilate;
};

struct NormReport {
  double value = 0.0;
  NormSpec spec;
  double length = 0.0;
  std::size_t n = 0;
  /// Set when the value grows without plateau as the box doubles.
  bool overflow_by_scaling = false;
  std::vector<std::string> flags;
  /// Per-rung values when evaluated on a ladder.
  std::vector<double> ladder_values;
  std::optional<SeriesClass> ladder_class;
};

/// sum u_j^2 dx.
double mass(const Field& u);

/// 1/2 ||D^{(a+1)/2} u||^2 - (1/6) sum u_j^3 dx, the Hamiltonian conserved
/// by the flow. The zero mode is annihilated inside the derivative.
double energy(const Field& u, const DispersionParams& p);

/// ||<xi>^s u^||.
double sobolev_norm(const Field& u, double s);

/// ||D^r u||; the zero mode (and, for r != 0, the Nyquist mode) is left out.
/// r < 0 under ZeroModePolicy::Reject throws on a mean-carrying field.
double homogeneous_norm(const Field& u, double r,
                        ZeroModePolicy policy = ZeroModePolicy::Annihilate);

/// || |x|^theta u || on the box coordinate.
double weighted_norm(const Field& u, double theta);

/// Squared components of the Z and script-Z norms.
struct ZNorms {
  double sobolev_sq = 0.0;      ///< ||u||_{H^s}^2
  double homogeneous_sq = 0.0;  ///< ||D^{(1+a) theta} u||^2
  double weighted_sq = 0.0;     ///< || |x|^theta u ||^2
  /// || |x|^{theta-1} D^{1+a} u ||^2: derivative first, then the weight.
  double weighted_derivative_sq = 0.0;
  /// || D^{(1+a)(theta-1)} (x u) ||^2: weight first, then the derivative.
  double derivative_of_weighted_sq = 0.0;
  /// The two terms above need theta >= 1 (|x|^{theta-1} is singular at 0
  /// otherwise); when theta < 1 they are 0 and this is false.
  bool cross_terms_defined = false;

  double z_sq() const { return sobolev_sq + homogeneous_sq + weighted_sq; }
  double script_z_sq() const {
    return z_sq() + weighted_derivative_sq + derivative_of_weighted_sq;
  }
};

ZNorms z_norms(const Field& u, double s, double theta,
               const DispersionParams& p,
               ZeroModePolicy policy = ZeroModePolicy::Annihilate);

struct InterpolationResult {
  double lhs = 0.0;  ///< ||J^{alpha beta}(<x>^{(1-beta) b} f)||
  double rhs = 0.0;  ///< ||<x>^b f||^{1-beta} ||J^alpha f||^beta
  double ratio = 0.0;
  /// f = 0: ratio reported as 0.
  bool degenerate_input = false;
};

InterpolationResult interpolation_check(const Field& f, double alpha, double b,
                                        double beta);

/// Evaluates one functional; the value is a norm (not squared) except for
/// Mass and Energy, which are the functionals themselves.
NormReport evaluate(const Field& u, const NormSpec& spec,
                    const DispersionParams& p);

/// Evaluates on every rung, classifies the sequence and flags
/// overflow_by_scaling when it diverges. `value` is the last rung's value.
NormReport evaluate_on_ladder(const std::function<Field(const Grid&)>& datum,
                              std::span<const Grid> ladder,
                              const NormSpec& spec, const DispersionParams& p);

}  // namespace fkdv
