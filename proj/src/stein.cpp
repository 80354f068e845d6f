#include "fkdv/stein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fkdv/errors.hpp"
#include "fkdv/kernels.hpp"
#include "fkdv/quadrature.hpp"

namespace fkdv {

namespace {

void check_order(double b) {
  if (!(b > 0.0 && b < 1.0))
    throw OrderOutOfRange("Stein derivative order must lie in (0, 1)");
}

cplx eval(const Profile& g, double y) {
  const cplx v = g.g(y);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw EvalError("profile is not finite at y = " + std::to_string(y));
  return v;
}

struct Interval {
  double lo, hi;
};

// Integrates f over each interval with a composite 8-point rule, doubling
// the panel count per interval until two successive answers agree. An
// interval is accepted once the change is small against its own value or
// against its share of the running total, so intervals of negligible
// weight (deep grading levels) stop at the first comparison.
template <class F>
double adaptive_sum(F&& f, const std::vector<Interval>& intervals,
                    const QuadConfig& q) {
  const auto& rule = quad::gauss_legendre(8);
  const std::size_t m = intervals.size();
  std::vector<double> coarse(m), fine(m);
  std::vector<int> panels(m, q.panels);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    coarse[i] = quad::integrate(f, intervals[i].lo, intervals[i].hi, rule,
                                q.panels);
    fine[i] = quad::integrate(f, intervals[i].lo, intervals[i].hi, rule,
                              2 * q.panels);
    panels[i] = 2 * q.panels;
    total += fine[i];
  }
  const double share = total / static_cast<double>(std::max<std::size_t>(m, 1));
  double result = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (int d = 1; d < q.max_doublings; ++d) {
      const double scale = std::max(std::abs(fine[i]), share);
      if (std::abs(fine[i] - coarse[i]) <= q.rel_tol * scale) break;
      panels[i] *= 2;
      coarse[i] = fine[i];
      fine[i] = quad::integrate(f, intervals[i].lo, intervals[i].hi, rule,
                                panels[i]);
    }
    result += fine[i];
  }
  return result;
}

std::vector<Interval> to_intervals(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    out.push_back({pts[i], pts[i + 1]});
  return out;
}

cplx five_point_derivative(const Profile& g, double x, double h) {
  return (-eval(g, x + 2 * h) + 8.0 * eval(g, x + h) - 8.0 * eval(g, x - h) +
          eval(g, x - 2 * h)) /
         (12.0 * h);
}

}  // namespace

double stein_integral(const Profile& g, double b, double x,
                      const QuadConfig& q) {
  check_order(b);
  if (!std::isfinite(x)) throw InvalidArgument("evaluation point must be finite");
  if (!(q.inner_cut > 0.0) || !(q.inner_cut < q.far_limit) || q.panels < 8)
    throw InvalidArgument("invalid quadrature configuration");

  double dist = std::numeric_limits<double>::infinity();
  double reach = 0.0;
  for (double s : g.singular_points) {
    dist = std::min(dist, std::abs(s - x));
    reach = std::max(reach, std::abs(s - x));
  }
  if (dist == 0.0)
    throw SingularPoint("Stein derivative requested at a singular point");

  const cplx gx = eval(g, x);
  const double p = 1.0 + 2.0 * b;
  const double delta = std::min(q.inner_cut, 1e-3 * dist);
  const double r0 = std::max(q.far_limit, 4.0 * reach);

  // Near field, per side in r = |y - x|: dyadic from delta out to r0,
  // graded toward every singular point inside the window.
  double total = 0.0;
  for (int side : {-1, 1}) {
    std::vector<double> rs;
    for (double r = delta; r < r0; r *= 2.0) rs.push_back(r);
    rs.push_back(r0);
    for (double s : g.singular_points) {
      const double rs0 = side * (s - x);
      if (rs0 <= 0.0 || rs0 >= r0) continue;
      rs.push_back(rs0);
      double h = 0.5 * rs0;
      for (int k = 0; k < q.singular_depth; ++k, h *= 0.5) {
        if (rs0 - h >= delta) rs.push_back(rs0 - h);
        if (rs0 + h <= r0) rs.push_back(rs0 + h);
      }
    }
    total += adaptive_sum(
        [&](double r) {
          return std::norm(gx - eval(g, x + side * r)) * std::pow(r, -p);
        },
        to_intervals(std::move(rs)), q);
  }

  // Far field: dyadic shells on both sides until the values of g at the
  // shell boundaries have settled, then the remaining tail is integrated as
  // if g were constant beyond the last shell.
  for (int side : {-1, 1}) {
    double r = r0;
    for (int shell = 0; shell < q.max_shells; ++shell) {
      total += adaptive_sum(
          [&](double rr) {
            return std::norm(gx - eval(g, x + side * rr)) * std::pow(rr, -p);
          },
          {{r, 2.0 * r}}, q);
      r *= 2.0;
      const double end = std::norm(gx - eval(g, x + side * r));
      double spread = 0.0;
      for (double frac : {0.5, 0.75})
        spread = std::max(
            spread, std::abs(std::norm(gx - eval(g, x + side * frac * r)) - end));
      const double tail_scale = std::pow(r, -2.0 * b) / (2.0 * b);
      if (spread * tail_scale <= 1e-10 * total || spread == 0.0) break;
    }
    total += std::norm(gx - eval(g, x + side * r)) * std::pow(r, -2.0 * b) /
             (2.0 * b);
  }

  // Window |y - x| < delta: |g(x) - g(y)|^2 = |g'(x)|^2 (y-x)^2 + O(|y-x|^4)
  // after the odd cubic terms cancel between the two sides.
  const double h = std::min(6e-6 * std::max(std::abs(x), 1e-3), 1e-2 * dist);
  const double slope = std::norm(five_point_derivative(g, x, h));
  total += 2.0 * slope * std::pow(delta, 2.0 - 2.0 * b) / (2.0 - 2.0 * b);

  if (!std::isfinite(total)) throw EvalError("Stein integral is not finite");
  return total;
}

double stein_derivative(const Profile& g, double b, double x,
                        const QuadConfig& q) {
  return std::sqrt(stein_integral(g, b, x, q));
}

double gagliardo_constant(double b) {
  check_order(b);
  const double p = 1.0 + 2.0 * b;
  const double two_pi = 2.0 * std::numbers::pi;
  const auto& rule = quad::gauss_legendre(16);
  auto f = [p](double u) {
    const double s = std::sin(0.5 * u);
    return 2.0 * s * s * std::pow(u, -p);
  };
  double total = 0.0;
  // [0, 2 pi] graded toward 0 where f ~ u^{1-2b}/2.
  double hi = two_pi;
  for (int k = 0; k < 80; ++k) {
    total += quad::integrate(f, 0.5 * hi, hi, rule, 1);
    hi *= 0.5;
  }
  // [0, hi] from f ~ u^{2-p}/2; it still matters as b approaches 1.
  total += std::pow(hi, 3.0 - p) / (2.0 * (3.0 - p));
  constexpr int kPeriods = 1000;
  for (int k = 1; k < kPeriods; ++k)
    total += quad::integrate(f, two_pi * k, two_pi * (k + 1), rule, 2);
  // Beyond A = 2 pi * kPeriods: integral of u^{-p} minus the asymptotic
  // series of the cosine integral (A is a multiple of 2 pi).
  const double A = two_pi * kPeriods;
  total += std::pow(A, 1.0 - p) / (p - 1.0) - p * std::pow(A, -p - 1.0) +
           p * (p + 1.0) * (p + 2.0) * std::pow(A, -p - 3.0);
  return 4.0 * total;
}

double stein_norm_squared(const Profile& g, double b, double half_width,
                          const QuadConfig& q) {
  check_order(b);
  if (!(half_width > 0.0)) throw InvalidArgument("half width must be positive");
  const auto& rule = quad::gauss_legendre(8);
  const double X = half_width;

  auto over_x = [&](int panels) {
    std::vector<double> xs;
    const double h = 2.0 * X / panels;
    for (int k = 0; k < panels; ++k)
      for (double node : rule.nodes) xs.push_back(-X + (k + 0.5 + 0.5 * node) * h);
    const auto vals = kernels::parallel::map_points(
        xs, [&](double x) { return stein_integral(g, b, x, q); });
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      acc += rule.weights[i % rule.nodes.size()] * vals[i];
    return acc * 0.5 * h;
  };
  int panels = 16;
  double prev = over_x(panels);
  double cur = over_x(2 * panels);
  for (int d = 0; d < 3 && std::abs(cur - prev) > 1e-9 * std::abs(cur); ++d) {
    panels *= 2;
    prev = cur;
    cur = over_x(2 * panels);
  }

  // |x| > X: I(x) = integral |g(y)|^2 |x - y|^{-p} dy expanded in y/x; odd
  // terms cancel between the two sides.
  const double p = 1.0 + 2.0 * b;
  double tail = 0.0;
  double ck = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) ck *= (p + k - 1.0) / k;
    if (k % 2 == 1) continue;
    const double mk = quad::integrate(
        [&](double y) { return std::pow(y, k) * std::norm(eval(g, y)); },
        -0.5 * X, 0.5 * X, rule, 128);
    tail += 2.0 * ck * mk * std::pow(X, 1.0 - p - k) / (p + k - 1.0);
  }
  return cur + tail;
}

Profile phase_profile(const DispersionParams& p, double t) {
  return {[p, t](double y) { return std::polar(1.0, t * p.symbol(y)); }, {0.0}};
}

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double u = std::exp(-1.0 / s), v = std::exp(-1.0 / (1.0 - s));
  return u / (u + v);
}

double standard_bump(double x) {
  // 1 for |x| <= 1/2, 0 for |x| >= 1.
  return smooth_step(2.0 * (1.0 - std::abs(x)));
}

PhaseBoundReport phase_bound_ratio(const DispersionParams& p, double b,
                                   double t, std::span<const double> xs,
                                   const QuadConfig& q) {
  check_order(b);
  for (double x : xs)
    if (x == 0.0) throw SingularPoint("phase bound evaluated at x = 0");
  const Profile g = phase_profile(p, t);
  const double bracket_t = std::sqrt(1.0 + t * t);
  PhaseBoundReport r;
  r.ratios = kernels::parallel::map_points(xs, [&](double x) {
    return stein_derivative(g, b, x, q) /
           (bracket_t * std::pow(std::abs(x), (1.0 + p.a()) * b));
  });
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (r.ratios[i] > r.max_ratio || i == 0) {
      r.max_ratio = r.ratios[i];
      r.argmax = xs[i];
    }
  return r;
}

const char* to_string(ProbeClass c) {
  switch (c) {
    case ProbeClass::Divergent: return "DIVERGENT";
    case ProbeClass::Bounded: return "BOUNDED";
    case ProbeClass::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

ProbeClass classify_cutoff_series(std::span<const double> deltas,
                                  std::span<const double> values) {
  if (deltas.size() != values.size() || values.size() < 2)
    throw InvalidArgument("need at least two cutoffs with matching values");
  bool all_grow = true;
  double last_change = 0.0;
  for (std::size_t k = 0; k + 1 < values.size(); ++k) {
    const double halvings = std::log2(deltas[k] / deltas[k + 1]);
    double per_halving;
    if (values[k] == 0.0)
      per_halving = values[k + 1] == 0.0 ? 1.0 : 2.0;
    else
      per_halving = std::pow(values[k + 1] / values[k], 1.0 / halvings);
    if (per_halving < 1.05) all_grow = false;
    last_change = std::abs(per_halving - 1.0);
  }
  if (all_grow) return ProbeClass::Divergent;
  if (last_change < 0.01) return ProbeClass::Bounded;
  return ProbeClass::Inconclusive;
}

std::vector<double> halving_cutoffs(double start, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(std::ldexp(start, -k));
  return out;
}

NonintegrabilityTable nonintegrability_probe(const DispersionParams& p,
                                             double b, double t, double lp,
                                             std::span<const double> deltas,
                                             const QuadConfig& q) {
  check_order(b);
  if (t == 0.0)
    throw DegenerateProbe("the phase is constant at t = 0; nothing to probe");
  if (!(lp >= 1.0)) throw InvalidArgument("exponent p must be >= 1");
  if (deltas.size() < 2) throw InvalidArgument("need at least two cutoffs");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0 && deltas[k] < 0.5))
      throw InvalidArgument("cutoffs must lie in (0, 1/2)");
    if (k > 0 && !(deltas[k] < deltas[k - 1]))
      throw InvalidArgument("cutoffs must decrease strictly");
  }
  const Profile g{[p, t](double y) {
                    return std::polar(standard_bump(y), t * p.symbol(y));
                  },
                  {0.0}};
  // Segments [deltas[k+1], deltas[k]] and [deltas[0], 1/2], each by a
  // 24-point rule in log x. The integrand is even in x.
  const auto& rule = quad::gauss_legendre(24);
  std::vector<double> edges{0.5};
  edges.insert(edges.end(), deltas.begin(), deltas.end());
  std::vector<double> xs, ws;
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double ua = std::log(edges[s + 1]), ub = std::log(edges[s]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * rule.nodes[i];
      xs.push_back(std::exp(u));
      ws.push_back(0.5 * (ub - ua) * rule.weights[i] * std::exp(u));
    }
  }
  const auto vals = kernels::parallel::map_points(
      xs, [&](double x) { return std::pow(stein_integral(g, b, x, q), 0.5 * lp); });

  NonintegrabilityTable table;
  table.deltas.assign(deltas.begin(), deltas.end());
  double acc = 0.0;
  const std::size_t per = rule.nodes.size();
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    for (std::size_t i = 0; i < per; ++i) acc += ws[s * per + i] * vals[s * per + i];
    table.values.push_back(std::pow(2.0 * acc, 1.0 / lp));
  }
  table.classification = classify_cutoff_series(table.deltas, table.values);
  return table;
}

LowFreqReport low_freq_decay_check(double beta, double theta,
                                   std::span<const double> xs,
                                   bool signed_variant, const QuadConfig& q) {
  if (!(beta > 0.0 && beta < 0.5))
    throw InvalidArgument("beta must lie in (0, 1/2)");
  check_order(theta);
  for (double x : xs)
    if (x == 0.0) throw SingularPoint("decay check evaluated at x = 0");
  const Profile h{[beta, signed_variant](double y) -> cplx {
                    if (y == 0.0) return 0.0;
                    const double v = std::pow(std::abs(y), -beta) * standard_bump(y);
                    return signed_variant && y < 0.0 ? -v : v;
                  },
                  {0.0}};
  LowFreqReport r;
  r.products = kernels::parallel::map_points(xs, [&](double x) {
    return stein_derivative(h, theta, x, q) *
           std::pow(std::abs(x), beta + theta);
  });
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (r.products[i] > r.max_product || i == 0) {
      r.max_product = r.products[i];
      r.argmax = xs[i];
    }
  return r;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > 0.0) || n < 2)
    throw InvalidArgument("logspace needs positive ends and n >= 2");
  std::vector<double> out(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace fkdv
