// One PASS/FAIL line per acceptance criterion, each timed against its
// budget. Exits 1 when any criterion fails.

#include <boost/math/special_functions/gamma.hpp>
#include <boost/numeric/odeint.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "fkdv/experiments.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/propagators.hpp"
#include "fkdv/solver.hpp"
#include "fkdv/spectral.hpp"
#include "fkdv/stein.hpp"
#include "test_support.hpp"

using namespace fkdv;
using namespace fkdv::testing;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const DispersionParams kA(-2.25);

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  std::printf("%s\t%2d %s\t%s\t%.2fs of %.0fs%s\n", ok ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs, budget_s, in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

Outcome propagator_algebra() {
  const Grid g(1024, 32.0 * kPi);
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Field f = random_band_limited(g, rng, 300);
    const double t = uniform(rng, -5.0, 5.0), s = uniform(rng, -5.0, 5.0);
    const double r = uniform(rng, -1.5, 1.5);
    const Field ut = linear_propagate(f, t, kA);
    worst = std::max({worst, rel_l2_diff(linear_propagate(f, 0.0, kA), f),
                      rel_l2_diff(linear_propagate(ut, s, kA), linear_propagate(f, s + t, kA)),
                      rel_diff(ut.l2_norm(), f.l2_norm()),
                      rel_l2_diff(linear_propagate(fractional_derivative(f, r), t, kA),
                                  fractional_derivative(ut, r))});
  }
  return {worst <= 1e-12, "largest relative error " + num(worst)};
}

Outcome weight_commutation() {
  const Grid g(4096, 64.0 * kPi);
  const Field f = make_datum(GaussianDatum{1.0, 1.0, 8.0, 1.0}, g);
  double worst = 0.0;
  for (double a : {-2.25, -2.4})
    for (double t : {0.5, 1.0})
      for (double mu : {0.0, 0.05})
        worst = std::max(worst, weight_commutation_residual(f, t, DispersionParams(a), mu).residual);
  return {worst <= 1e-8, "largest residual " + num(worst)};
}

Outcome conservation() {
  const Grid g(1024, 32.0 * kPi);
  const Field phi = gaussian(g, 0.2);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 0.5;
  const Trajectory tr = evolve(phi, cfg);
  cfg.dt = cfg.T / 8.0;
  const double coarse = evolve(phi, cfg).max_energy_drift;
  cfg.dt = cfg.T / 16.0;
  const double fine = evolve(phi, cfg).max_energy_drift;
  const bool ok = tr.max_mass_drift <= 1e-9 && tr.max_energy_drift <= 1e-6 && coarse / fine >= 12.0;
  return {ok, "mass drift " + num(tr.max_mass_drift) + ", energy drift " +
                  num(tr.max_energy_drift) + ", halving ratio " + num(coarse / fine)};
}

Outcome stein_identity() {
  const Profile g{[](double x) { return cplx(std::exp(-x * x), 0.0); }, {}};
  const Grid grid(std::size_t{1} << 18, 13107.2);
  const Field f = Field::from_function(grid, [](double x) { return std::exp(-x * x); });
  double worst = 0.0, const_err = 0.0;
  for (double b : {0.25, 0.5, 0.75}) {
    const double h = homogeneous_norm(f, b);
    const double cb = gagliardo_constant(b);
    worst = std::max(worst, rel_diff(stein_norm_squared(g, b, 8.0), cb * h * h));
    // closed form -4 Gamma(-2b) cos(pi b); its limit at b = 1/2 is 2 pi
    const double closed = b == 0.5 ? 2.0 * kPi
                                   : -4.0 * boost::math::tgamma(-2.0 * b) * std::cos(kPi * b);
    const_err = std::max(const_err, rel_diff(cb, closed));
  }
  const double half = rel_diff(gagliardo_constant(0.5), 2.0 * kPi);
  return {worst <= 1e-4 && half <= 1e-6 && const_err <= 1e-6,
          "identity error " + num(worst) + ", C_1/2 error " + num(half) +
              ", C_b vs Gamma form " + num(const_err)};
}

Outcome phase_bound() {
  const auto xs = logspace(0.05, 50.0, 40);
  QuadConfig fine;
  fine.panels = 16;
  fine.rel_tol = 1e-7;
  fine.inner_cut = 5e-6;
  bool ok = true;
  double worst = 1.0, largest = 0.0;
  for (double b : {0.3, 0.6, 0.9})
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      const double c = phase_bound_ratio(kA, b, t, xs).max_ratio;
      const double r = phase_bound_ratio(kA, b, t, xs, fine).max_ratio;
      ok = ok && std::isfinite(c) && std::isfinite(r) && c > 0.0 && r > 0.0;
      worst = std::max(worst, std::max(c, r) / std::min(c, r));
      largest = std::max(largest, c);
    }
  return {ok && worst < 2.0, "largest ratio " + num(largest) + ", refinement factor " + num(worst)};
}

Outcome nonintegrability() {
  const auto d = halving_cutoffs(0.1, 11);
  const auto above = nonintegrability_probe(kA, 0.6, 1.0, 2.0, d);
  const auto below = nonintegrability_probe(kA, 0.2, 1.0, 2.0, d);
  return {above.classification == ProbeClass::Divergent &&
              below.classification == ProbeClass::Bounded,
          std::string("b=0.6 ") + to_string(above.classification) + ", b=0.2 " +
              to_string(below.classification) + " over delta 0.1.." + num(d.back())};
}

Outcome smoothing_bound() {
  const Grid g(1024, 128.0 * kPi);
  std::mt19937_64 rng(2);
  double worst = 0.0;
  bool ok = true;
  for (int k = 0; k < 20; ++k) {
    const double lambda = uniform(rng, 0.25, 4.0);
    const double xi_star = g.dxi() * std::uniform_int_distribution<int>(1, 256)(rng);
    const double mut = lambda / (xi_star * xi_star);
    double sup = 0.0;
    for (std::size_t i = 1; i < g.size() / 2; ++i)
      sup = std::max(sup, std::pow(g.xi(i), 2.0 * lambda) * std::exp(-mut * g.xi(i) * g.xi(i)));
    const double bound = smoothing_gain(lambda, mut, 1.0);
    ok = ok && sup <= bound * (1.0 + 1e-12);
    worst = std::max(worst, std::abs(bound - sup) / bound);
  }
  return {ok && worst < 1e-6, "largest gap " + num(worst)};
}

Outcome mu_continuation_check() {
  const Grid g(1024, 32.0 * kPi);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 1.0;
  cfg.output_times = {0.25, 0.5, 0.75, 1.0};
  const std::vector<double> mus{1e-1, 1e-2, 1e-3, 1e-4};
  const auto table = mu_continuation(make_datum(GaussianDatum{1.0, 1.0, 4.0, 0.0}, g), mus, cfg);
  std::string d = "distances";
  for (double v : table.distances) d += " " + num(v);
  return {table.strictly_decreasing, d};
}

Outcome decay_dichotomy() {
  ExperimentSpec s;
  s.params = kA;
  s.datum = BumpSpectrumDatum{0.05, 1.0};
  s.ladder = doubling_ladder(256.0 * kPi, 2048, 4);
  s.thetas = {0.3, 0.5};
  s.times = {1.0};
  const Report r = decay_threshold_sweep(s);
  bool ok = true;
  std::string d;
  for (const char* group : {"linear", "nonlinear"}) {
    const SeriesClass lo = r.find(group, 1.0, 0.3)->classification;
    const SeriesClass hi = r.find(group, 1.0, 0.5)->classification;
    ok = ok && lo == SeriesClass::Convergent && hi == SeriesClass::Divergent;
    d += std::string(d.empty() ? "" : "; ") + group + " 0.3 " + to_string(lo) + ", 0.5 " +
         to_string(hi);
  }
  return {ok, d};
}

Outcome extra_decay() {
  ExperimentSpec s;
  s.params = kA;
  s.datum = AlgebraicDatum{0.1, 1.7, 3.0, 0.5};
  s.ladder = doubling_ladder(128.0, 2048, 4);
  s.padding = 2;
  s.thetas = {1.15, 1.2};
  s.times = {0.5, 1.0};
  const Report r = extra_decay_check(s);
  bool ok = *datum_decay_class(s.datum, kA) >= 1.15;
  std::string d;
  for (double t : s.times) {
    const SeriesClass c = r.find("duhamel", t, 1.2)->classification;
    ok = ok && c == SeriesClass::Convergent;
    d += "t=" + num(t) + " " + to_string(c) + " ";
  }
  double cross = 0.0;
  for (const Table& tab : r.tables)
    if (tab.name == "cross_check")
      for (const auto& row : tab.rows) cross = std::max(cross, row.back());
  return {ok && cross <= kDuhamelCrossCheckTol, d + "cross-check " + num(cross)};
}

Outcome majorant_check() {
  namespace odeint = boost::numeric::odeint;
  double worst = 0.0;
  for (double rho0 : {0.3, 1.0, 4.0})
    for (double cs : {0.5, 1.0, 2.0}) {
      const Majorant m = majorant(rho0, 0.2, cs, 1.0);
      using State = std::vector<double>;
      State y{rho0, 0.0};
      auto rhs = [&](const State& x, State& dx, double) {
        dx[0] = cs * std::pow(x[0], 1.5);
        dx[1] = x[0];
      };
      auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-13, 1e-13);
      double t = 0.0;
      for (int k = 1; k <= 9; ++k) {
        const double target = 0.1 * k * m.T_star;
        odeint::integrate_adaptive(stepper, rhs, y, t, target, 1e-5);
        t = target;
        const double h = 0.2 + y[1];
        worst = std::max({worst, rel_diff(m.rho1(t), y[0]), rel_diff(m.rho(t), y[0] + h * h)});
      }
    }
  return {worst <= 1e-6, "largest relative deviation " + num(worst) + " up to 0.9 T*"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path base = fs::current_path() / "acceptance_determinism";
  fs::remove_all(base);
  for (const char* run : {"first", "second"}) {
    const std::string cmd = std::string("\"") + FKDV_CLI_PATH +
                            "\" verify-bounds --a=-2.25 --out \"" + (base / run).string() +
                            "\" > \"" + (base.string() + "_" + run + ".log") + "\" 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0) return {false, std::string("verify-bounds run ") + run + " exited " + std::to_string(rc)};
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(base / "first")) {
    if (e.path().extension() != ".csv") continue;
    ++files;
    const fs::path other = base / "second" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other))
      return {false, e.path().filename().string() + " differs"};
  }
  std::size_t second = 0;
  for (const auto& e : fs::directory_iterator(base / "second"))
    second += e.path().extension() == ".csv";
  return {files > 0 && files == second, std::to_string(files) + " CSV files identical"};
}

}  // namespace

int main() {
  criterion(1, "propagator algebra", 5, propagator_algebra);
  criterion(2, "weight commutation", 10, weight_commutation);
  criterion(3, "conservation", 30, conservation);
  criterion(4, "Stein-Fourier identity", 60, stein_identity);
  criterion(5, "phase bound", 120, phase_bound);
  criterion(6, "non-integrability dichotomy", 60, nonintegrability);
  criterion(7, "smoothing bound", 1, smoothing_bound);
  criterion(8, "mu-continuation", 120, mu_continuation_check);
  criterion(9, "decay-threshold dichotomy", 180, decay_dichotomy);
  criterion(10, "extra decay of the Duhamel term", 180, extra_decay);
  criterion(11, "majorant", 1, majorant_check);
  criterion(12, "determinism", 120, determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
