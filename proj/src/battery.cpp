#include "fkdv/battery.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "fkdv/errors.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/propagators.hpp"
#include "fkdv/spectral.hpp"
#include "fkdv/stein.hpp"

namespace fkdv {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel_diff(const Field& a, const Field& b, double scale) {
  return (a - b).l2_norm() / scale;
}

Field random_band_limited(const Grid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const long band = static_cast<long>(g.size() / 8);
  Spectrum s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const long k = g.wavenumber(i);
    if (k < 0 || k > band) continue;
    const cplx c(u(rng), k == 0 ? 0.0 : u(rng));
    s[i] = c;
    if (k > 0) s[g.size() - static_cast<std::size_t>(k)] = std::conj(c);
  }
  return Field::from_spectrum(g, std::move(s));
}

struct Battery {
  const DispersionParams& p;
  const BatteryConfig& cfg;
  Report& r;

  void run(const std::string& name, const std::function<Check()>& body) {
    try {
      Check c = body();
      c.name = name;
      r.checks.push_back(std::move(c));
    } catch (const std::exception& e) {
      r.checks.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }

  Check exponents() {
    const double lo = p.theta_low(), mid = p.theta_mid(), hi = p.theta_max();
    const double bc = p.b_crit();
    r.tables.push_back({"exponents",
                        {"a", "theta_low", "theta_mid", "theta_max", "b_crit"},
                        {{p.a(), lo, mid, hi, bc}}});
    const bool ok = lo < 1.0 && 1.0 < mid && mid < hi &&
                    std::abs(hi - 1.0 - bc) <= 1e-14;
    return {"", ok,
            "theta_low=" + num(lo) + " theta_mid=" + num(mid) +
                " theta_max=" + num(hi) + " b_crit=" + num(bc)};
  }

  Check propagator_algebra() {
    const Grid g(1024, 32.0 * kPi);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> time(-2.0, 2.0);
    double identity = 0.0, group = 0.0, unitary = 0.0, commute = 0.0;
    for (int k = 0; k < cfg.random_fields; ++k) {
      const Field f = random_band_limited(g, rng);
      const double s = time(rng), t = time(rng);
      const double norm = f.l2_norm();
      identity = std::max(identity, rel_diff(linear_propagate(f, 0.0, p), f, norm));
      const Field ut = linear_propagate(f, t, p);
      group = std::max(group, rel_diff(linear_propagate(ut, s, p),
                                       linear_propagate(f, s + t, p), norm));
      unitary = std::max(unitary, std::abs(ut.l2_norm() - norm) / norm);
      for (double order : {0.5, 1.0 + p.a()}) {
        const Field d = fractional_derivative(f, order);
        commute = std::max(commute,
                           rel_diff(linear_propagate(d, t, p),
                                    fractional_derivative(ut, order), d.l2_norm()));
      }
    }
    r.tables.push_back({"propagator_algebra",
                        {"identity", "group", "unitarity", "commutation"},
                        {{identity, group, unitary, commute}}});
    const double worst = std::max({identity, group, unitary, commute});
    return {"", worst <= 1e-12, "largest relative error " + num(worst)};
  }

  Check weight_commutation() {
    const Grid g(4096, 64.0 * kPi);
    const Field f = make_datum(GaussianDatum{1.0, 1.0, 8.0, 1.0}, g);
    Table tab{"weight_commutation", {"t", "mu", "residual"}, {}};
    double worst = 0.0;
    for (double t : {0.5, 1.0})
      for (double mu : {0.0, 0.05}) {
        const double res = weight_commutation_residual(f, t, p, mu).residual;
        tab.rows.push_back({t, mu, res});
        worst = std::max(worst, res);
      }
    r.tables.push_back(std::move(tab));
    return {"", worst <= 1e-8, "largest residual " + num(worst)};
  }

  Check smoothing() {
    const Grid g(1024, 128.0 * kPi);
    std::mt19937_64 rng(cfg.seed + 1);
    std::uniform_real_distribution<double> lam(0.25, 4.0);
    std::uniform_int_distribution<int> slot(1, static_cast<int>(g.size() / 4));
    Table tab{"smoothing", {"lambda", "mu_t", "grid_sup", "bound"}, {}};
    bool ok = true;
    double worst_gap = 0.0;
    for (int k = 0; k < cfg.smoothing_pairs; ++k) {
      const double lambda = lam(rng);
      const double xi_star = slot(rng) * g.dxi();
      const double mut = lambda / (xi_star * xi_star);
      double sup = 0.0;
      for (std::size_t i = 1; i < g.size() / 2; ++i) {
        const double xi = g.xi(i);
        sup = std::max(sup, std::pow(xi, 2.0 * lambda) * std::exp(-mut * xi * xi));
      }
      const double bound = smoothing_gain(lambda, mut, 1.0);
      const double gap = (bound - sup) / bound;
      ok = ok && sup <= bound * (1.0 + 1e-12) && gap < 1e-6;
      worst_gap = std::max(worst_gap, std::abs(gap));
      tab.rows.push_back({lambda, mut, sup, bound});
    }
    r.tables.push_back(std::move(tab));
    return {"", ok, "largest relative gap " + num(worst_gap)};
  }

  Check stein_identity() {
    const Profile g{[](double x) { return cplx(std::exp(-x * x), 0.0); }, {}};
    // The lattice sum of |xi|^{2b} |g^|^2 is off by ~dxi^{1+2b} at xi = 0,
    // hence the long box.
    const Grid grid(std::size_t{1} << 18, 13107.2);
    const Field f = Field::from_function(grid, [](double x) { return std::exp(-x * x); });
    Table tab{"stein_identity", {"b", "stein_sq", "spectral_sq", "C_b", "rel_error"}, {}};
    double worst = 0.0;
    for (double b : {0.25, 0.5, 0.75}) {
      const double lhs = stein_norm_squared(g, b, 8.0);
      const double h = homogeneous_norm(f, b);
      const double cb = gagliardo_constant(b);
      const double err = std::abs(lhs - cb * h * h) / lhs;
      worst = std::max(worst, err);
      tab.rows.push_back({b, lhs, h * h, cb, err});
    }
    r.tables.push_back(std::move(tab));
    return {"", worst <= 1e-4, "largest relative error " + num(worst)};
  }

  Check gagliardo_half() {
    const double c = gagliardo_constant(0.5);
    const double err = std::abs(c - 2.0 * kPi) / (2.0 * kPi);
    return {"", err <= 1e-6, "C_1/2 = " + num(c) + ", relative error " + num(err)};
  }

  Check phase_bound() {
    const auto xs = logspace(0.05, 50.0, static_cast<std::size_t>(cfg.phase_points));
    QuadConfig fine;
    fine.panels = 16;
    fine.rel_tol = 1e-7;
    fine.inner_cut = 5e-6;
    Table tab{"phase_bound", {"b", "t", "max_ratio", "argmax", "max_ratio_refined"}, {}};
    bool ok = true;
    double worst = 1.0;
    for (double b : {0.3, 0.6, 0.9})
      for (double t : {0.5, 1.0, 2.0, 5.0}) {
        const auto coarse = phase_bound_ratio(p, b, t, xs);
        const auto refined = phase_bound_ratio(p, b, t, xs, fine);
        const double change = std::max(coarse.max_ratio, refined.max_ratio) /
                              std::min(coarse.max_ratio, refined.max_ratio);
        ok = ok && std::isfinite(coarse.max_ratio) && std::isfinite(refined.max_ratio) &&
             coarse.max_ratio > 0.0 && change < 2.0;
        worst = std::max(worst, change);
        tab.rows.push_back({b, t, coarse.max_ratio, coarse.argmax, refined.max_ratio});
      }
    r.tables.push_back(std::move(tab));
    return {"", ok, "largest refinement factor " + num(worst)};
  }

  Check nonintegrability() {
    const auto deltas = halving_cutoffs(0.1, 11);
    const double hi = p.b_crit() + 0.2, lo = p.b_crit() - 0.2;
    const auto above = nonintegrability_probe(p, hi, 1.0, 2.0, deltas);
    const auto below = nonintegrability_probe(p, lo, 1.0, 2.0, deltas);
    Table tab{"nonintegrability", {"delta", "value_b_above", "value_b_below"}, {}};
    for (std::size_t k = 0; k < deltas.size(); ++k)
      tab.rows.push_back({deltas[k], above.values[k], below.values[k]});
    r.tables.push_back(std::move(tab));
    const bool ok = above.classification == ProbeClass::Divergent &&
                    below.classification == ProbeClass::Bounded;
    return {"", ok,
            "b=" + num(hi) + " " + to_string(above.classification) + ", b=" +
                num(lo) + " " + to_string(below.classification)};
  }

  Check low_frequency() {
    const double beta = -(2.0 + p.a());
    const auto xs = logspace(0.01, 10.0, static_cast<std::size_t>(cfg.low_freq_points));
    QuadConfig fine;
    fine.panels = 16;
    fine.rel_tol = 1e-7;
    Table tab{"low_frequency", {"beta", "theta", "signed", "max_product", "argmax",
                                "max_product_refined", "product_at_100"}, {}};
    bool ok = true;
    for (double theta : {0.3, 0.05})
      for (bool sgn : {false, true}) {
        const auto coarse = low_freq_decay_check(beta, theta, xs, sgn);
        const auto refined = low_freq_decay_check(beta, theta, xs, sgn, fine);
        const std::vector<double> far{100.0};
        const double at100 = low_freq_decay_check(beta, theta, far, sgn).max_product;
        const double change = std::max(coarse.max_product, refined.max_product) /
                              std::min(coarse.max_product, refined.max_product);
        ok = ok && std::isfinite(coarse.max_product) && std::isfinite(at100) &&
             change < 1.01 && at100 <= coarse.max_product;
        tab.rows.push_back({beta, theta, sgn ? 1.0 : 0.0, coarse.max_product,
                            coarse.argmax, refined.max_product, at100});
      }
    r.tables.push_back(std::move(tab));
    return {"", ok, "beta=" + num(beta)};
  }

  Check interpolation() {
    const Grid g(4096, 64.0 * kPi);
    const std::vector<std::function<double(double)>> fs{
        [](double x) { return std::exp(-x * x); },
        [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); },
        [](double x) { return std::pow(1.0 + x * x, -2.0); }};
    Table tab{"interpolation", {"datum", "beta", "lhs", "rhs", "ratio"}, {}};
    double worst = 0.0;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const Field f = Field::from_function(g, fs[k]);
      for (double beta : {0.25, 0.5, 0.75}) {
        const auto res = interpolation_check(f, 1.0, 1.0, beta);
        worst = std::max(worst, res.ratio);
        tab.rows.push_back({static_cast<double>(k), beta, res.lhs, res.rhs, res.ratio});
      }
    }
    r.tables.push_back(std::move(tab));
    return {"", std::isfinite(worst) && worst <= 1.0,
            "largest ratio " + num(worst)};
  }
};

}  // namespace

Report bounds_battery(const DispersionParams& p, const BatteryConfig& cfg) {
  Report r;
  r.experiment = "verify-bounds";
  r.spec.name = "bounds-battery";
  r.spec.params = p;
  r.spec.solver.params = p;
  Battery b{p, cfg, r};
  b.run("exponent ordering", [&] { return b.exponents(); });
  b.run("propagator algebra", [&] { return b.propagator_algebra(); });
  b.run("weight commutation", [&] { return b.weight_commutation(); });
  b.run("smoothing bound", [&] { return b.smoothing(); });
  b.run("Stein-Fourier identity", [&] { return b.stein_identity(); });
  b.run("Gagliardo constant at 1/2", [&] { return b.gagliardo_half(); });
  b.run("phase bound", [&] { return b.phase_bound(); });
  b.run("non-integrability dichotomy", [&] { return b.nonintegrability(); });
  b.run("low-frequency decay", [&] { return b.low_frequency(); });
  b.run("interpolation estimate", [&] { return b.interpolation(); });
  r.flags.push_back("b_crit=" + num(p.b_crit()));
  return r;
}

}  // namespace fkdv
