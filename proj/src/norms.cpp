#include "fkdv/norms.hpp"

#include <cmath>

#include "fkdv/errors.hpp"
#include "fkdv/kernels.hpp"

namespace fkdv {

namespace {

double spectral_norm_sq(const Field& u, const std::vector<double>& weight) {
  return kernels::parallel::spectral_square_sum(u.spectrum(), weight,
                                                1.0 / u.grid().length());
}

std::vector<double> sobolev_weight(const Grid& g, double s) {
  std::vector<double> w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.xi(i);
    w[i] = std::pow(1.0 + xi * xi, s);
  }
  return w;
}

std::vector<double> homogeneous_weight(const Grid& g, double r) {
  std::vector<double> w(g.size(), 1.0);
  if (r == 0.0) return w;
  for (std::size_t i = 1; i < g.size(); ++i)
    w[i] = std::pow(std::abs(g.xi(i)), 2.0 * r);
  w[0] = 0.0;
  w[g.nyquist_index()] = 0.0;
  return w;
}

void check_policy(const Field& u, double r, ZeroModePolicy policy) {
  if (r < 0.0 && policy == ZeroModePolicy::Reject) {
    const double norm = u.l2_norm();
    if (std::abs(u.mean()) > 1e-13 * norm) throw MeanCarryingField(u.mean(), norm);
  }
}

}  // namespace

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::Mass: return "mass";
    case NormKind::Energy: return "energy";
    case NormKind::Sobolev: return "sobolev";
    case NormKind::Homogeneous: return "homogeneous";
    case NormKind::Weighted: return "weighted";
    case NormKind::Z: return "z";
    case NormKind::ScriptZ: return "script_z";
  }
  return "unknown";
}

double mass(const Field& u) {
  const auto x = u.grid().points();
  return kernels::parallel::weighted_square_sum(x, u.samples(), 0.0,
                                                u.grid().spacing());
}

double energy(const Field& u, const DispersionParams& p) {
  const double quad_part =
      0.5 * spectral_norm_sq(u, homogeneous_weight(u.grid(), 0.5 * (p.a() + 1.0)));
  double cubic = 0.0;
  for (double v : u.samples()) cubic += v * v * v;
  return quad_part - cubic * u.grid().spacing() / 6.0;
}

double sobolev_norm(const Field& u, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("Sobolev index must be finite");
  return std::sqrt(spectral_norm_sq(u, sobolev_weight(u.grid(), s)));
}

double homogeneous_norm(const Field& u, double r, ZeroModePolicy policy) {
  if (!std::isfinite(r)) throw InvalidArgument("homogeneous order must be finite");
  check_policy(u, r, policy);
  return std::sqrt(spectral_norm_sq(u, homogeneous_weight(u.grid(), r)));
}

double weighted_norm(const Field& u, double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("weight exponent must be finite");
  const auto x = u.grid().points();
  return std::sqrt(kernels::parallel::weighted_square_sum(
      x, u.samples(), theta, u.grid().spacing()));
}

ZNorms z_norms(const Field& u, double s, double theta,
               const DispersionParams& p, ZeroModePolicy policy) {
  ZNorms z;
  const double one_a = 1.0 + p.a();
  z.sobolev_sq = std::pow(sobolev_norm(u, s), 2);
  z.homogeneous_sq = std::pow(homogeneous_norm(u, one_a * theta, policy), 2);
  z.weighted_sq = std::pow(weighted_norm(u, theta), 2);
  if (theta >= 1.0) {
    z.cross_terms_defined = true;
    const Field du = fractional_derivative(u, one_a, policy);
    z.weighted_derivative_sq = std::pow(weighted_norm(du, theta - 1.0), 2);
    const Field xu = multiply_by_x(u);
    z.derivative_of_weighted_sq =
        std::pow(fractional_derivative(xu, one_a * (theta - 1.0), policy).l2_norm(), 2);
  }
  return z;
}

InterpolationResult interpolation_check(const Field& f, double alpha, double b,
                                        double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("beta must lie in (0, 1)");
  if (!(alpha > 0.0) || !(b > 0.0))
    throw InvalidArgument("alpha and b must be positive");
  InterpolationResult r;
  r.lhs = bessel_potential(multiply_by_japanese_x(f, (1.0 - beta) * b), alpha * beta)
              .l2_norm();
  r.rhs = std::pow(multiply_by_japanese_x(f, b).l2_norm(), 1.0 - beta) *
          std::pow(bessel_potential(f, alpha).l2_norm(), beta);
  if (r.rhs == 0.0) {
    r.degenerate_input = true;
    r.ratio = 0.0;
  } else {
    r.ratio = r.lhs / r.rhs;
  }
  return r;
}

NormReport evaluate(const Field& u, const NormSpec& spec,
                    const DispersionParams& p) {
  NormReport rep;
  rep.spec = spec;
  rep.length = u.grid().length();
  rep.n = u.grid().size();
  switch (spec.kind) {
    case NormKind::Mass: rep.value = mass(u); break;
    case NormKind::Energy: rep.value = energy(u, p); break;
    case NormKind::Sobolev: rep.value = sobolev_norm(u, spec.s); break;
    case NormKind::Homogeneous:
      rep.value = homogeneous_norm(u, spec.r, spec.policy);
      break;
    case NormKind::Weighted:
      if (spec.theta < 0.0) throw InvalidArgument("weighted norm needs theta >= 0");
      rep.value = weighted_norm(u, spec.theta);
      break;
    case NormKind::Z:
      rep.value = std::sqrt(z_norms(u, spec.s, spec.theta, p, spec.policy).z_sq());
      break;
    case NormKind::ScriptZ: {
      const auto z = z_norms(u, spec.s, spec.theta, p, spec.policy);
      if (!z.cross_terms_defined) rep.flags.push_back("cross_terms_undefined");
      rep.value = std::sqrt(z.script_z_sq());
      break;
    }
  }
  if (!std::isfinite(rep.value)) rep.flags.push_back("non_finite");
  return rep;
}

NormReport evaluate_on_ladder(const std::function<Field(const Grid&)>& datum,
                              std::span<const Grid> ladder,
                              const NormSpec& spec, const DispersionParams& p) {
  if (ladder.size() < 2) throw InvalidArgument("a ladder needs at least two rungs");
  NormReport rep;
  for (const Grid& g : ladder) {
    rep = [&] {
      auto r = evaluate(datum(g), spec, p);
      r.ladder_values = std::move(rep.ladder_values);
      return r;
    }();
    rep.ladder_values.push_back(rep.value);
  }
  rep.ladder_class = classify_ladder(rep.ladder_values);
  if (*rep.ladder_class == SeriesClass::Divergent) {
    rep.overflow_by_scaling = true;
    rep.flags.push_back("OVERFLOW-BY-SCALING");
  } else if (*rep.ladder_class == SeriesClass::Inconclusive) {
    rep.flags.push_back("INCONCLUSIVE");
  }
  return rep;
}

}  // namespace fkdv
