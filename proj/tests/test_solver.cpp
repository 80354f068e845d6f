#include <catch_amalgamated.hpp>

#include <boost/numeric/odeint.hpp>

#include "fkdv/errors.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/propagators.hpp"
#include "fkdv/solver.hpp"
#include "test_support.hpp"

using namespace fkdv;
using namespace fkdv::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
namespace odeint = boost::numeric::odeint;

namespace {

const DispersionParams kA(-2.25);

// Direct O(n^2) transforms, independent of the FFT library.
std::vector<cplx> dft(const Grid& g, const std::vector<cplx>& u) {
  std::vector<cplx> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t j = 0; j < g.size(); ++j)
      out[k] += u[j] * std::exp(cplx(0.0, -g.xi(k) * g.x(j))) * g.spacing();
  return out;
}
std::vector<cplx> idft(const Grid& g, const std::vector<cplx>& F) {
  std::vector<cplx> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k)
      out[j] += F[k] * std::exp(cplx(0.0, g.xi(k) * g.x(j))) / g.length();
  return out;
}

// Spectrum of -1/2 d_x P (P u)^2 from the spectrum F, by direct
// convolution over kept wavenumbers; sums k + r outside the lattice wrap
// around as they do in a pseudo-spectral product.
std::vector<cplx> brute_rhs(const Grid& g, const std::vector<cplx>& F, double dealias) {
  const long n = static_cast<long>(g.size());
  const long kc = static_cast<long>(std::floor(dealias * n / 2.0));
  auto slot = [&](long k) { return static_cast<std::size_t>((k % n + n) % n); };
  auto kept = [&](long k) { return std::abs(k) <= kc && std::abs(k) != n / 2; };
  std::vector<cplx> out(g.size());
  for (long m = -n / 2 + 1; m < n / 2; ++m) {
    if (!kept(m)) continue;
    cplx acc = 0.0;
    for (long k = -kc; k <= kc; ++k) {
      if (!kept(k)) continue;
      for (long r : {m - k, m - k + n, m - k - n})
        if (kept(r)) acc += F[slot(k)] * F[slot(r)];
    }
    acc /= g.length();  // coefficient of a product under this normalization
    out[slot(m)] = -0.5 * cplx(0.0, g.xi(slot(m))) * acc;
  }
  return out;
}

Field field_of(const Grid& g, const std::vector<cplx>& F) {
  return Field::from_spectrum(g, Spectrum(F.begin(), F.end()));
}

}  // namespace

TEST_CASE("nonlinear term matches the brute-force dealiased convolution at n = 16") {
  const Grid g(16, 7.0);
  std::mt19937_64 rng(12);
  for (double dealias : {2.0 / 3.0, 0.75, 1.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Field u = random_samples(g, rng);
      const Field ours = nonlinear_rhs(u, dealias);
      std::vector<cplx> samples(u.samples().begin(), u.samples().end());
      auto F = dft(g, samples);
      const auto ref = idft(g, brute_rhs(g, F, dealias));
      for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK_THAT(ours[j], WithinAbs(ref[j].real(), 1e-12));
        CHECK_THAT(ref[j].imag(), WithinAbs(0.0, 1e-12));
      }
    }
  }
}

TEST_CASE("solver agrees with an adaptive ODE integration of the Fourier modes") {
  const Grid g(32, 4.0 * std::numbers::pi);
  std::mt19937_64 rng(13);
  const Field phi = random_band_limited(g, rng, 8) * 0.3;
  for (double mu : {0.0, 0.02}) {
    using State = std::vector<cplx>;
    State F(phi.spectrum().begin(), phi.spectrum().end());
    auto rhs = [&](const State& x, State& dx, double) {
      dx = brute_rhs(g, x, 2.0 / 3.0);
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == g.nyquist_index()) continue;
        const double xi = g.xi(k);
        dx[k] += cplx(-mu * xi * xi, kA.symbol(xi)) * x[k];
      }
    };
    odeint::integrate_adaptive(
        odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, F, 0.0,
        1.0, 1e-3);
    SolveConfig cfg;
    cfg.params = kA;
    cfg.mu = mu;
    cfg.T = 1.0;
    cfg.output_times = {1.0};
    std::vector<double> err;
    for (double dt : {1.0 / 64.0, 1.0 / 128.0}) {
      cfg.dt = dt;
      const Trajectory tr = evolve(phi, cfg);
      REQUIRE(tr.times.back() == 1.0);
      err.push_back(rel_l2_diff(tr.fields.back(), field_of(g, F)));
    }
    // fourth order toward the ODE solution
    CHECK(err[1] < 1e-6);
    CHECK(err[0] / err[1] > 12.0);
    CHECK(err[0] / err[1] < 20.0);
  }
}

TEST_CASE("linear flow of the solver is the propagator") {
  const Grid g(256, 40.0);
  const Field phi = gaussian(g, 1.0, 1.0, 2.0);
  for (double mu : {0.0, 0.05}) {
    SolveConfig cfg;
    cfg.params = kA;
    cfg.mu = mu;
    cfg.T = 2.0;
    cfg.nonlinear = false;
    cfg.output_times = {0.5, 2.0};
    const Trajectory tr = evolve(phi, cfg);
    REQUIRE(tr.times.size() == 3);
    CHECK(tr.times[0] == 0.0);
    for (std::size_t i = 1; i < 3; ++i)
      CHECK(rel_l2_diff(tr.fields[i], regularized_propagate(phi, tr.times[i], kA, mu)) < 1e-12);
  }
}

TEST_CASE("conservation without viscosity, dissipation with it") {
  const Grid g(1024, 32.0 * std::numbers::pi);
  const Field phi = gaussian(g, 0.2);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 0.5;
  const Trajectory tr = evolve(phi, cfg);
  CHECK(tr.max_mass_drift <= 1e-9);
  CHECK(tr.max_energy_drift <= 1e-6);
  CHECK(tr.dt == default_dt(g, 0.5));

  cfg.mu = 0.05;
  cfg.output_times.clear();
  const Trajectory visc = evolve(phi, cfg);
  for (std::size_t i = 1; i < visc.mass.size(); ++i) CHECK(visc.mass[i] < visc.mass[i - 1]);
  for (const Field& u : visc.fields) CHECK_THAT(u.mean(), WithinRel(phi.mean(), 1e-13));
}

TEST_CASE("energy drift shrinks at fourth order") {
  const Grid g(1024, 32.0 * std::numbers::pi);
  const Field phi = gaussian(g, 0.2);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 0.5;
  cfg.dt = cfg.T / 8.0;
  const double coarse = evolve(phi, cfg).max_energy_drift;
  cfg.dt = cfg.T / 16.0;
  const double fine = evolve(phi, cfg).max_energy_drift;
  CHECK(coarse / fine >= 12.0);
}

TEST_CASE("Picard iteration reproduces the integrating-factor solution to second order") {
  const Grid g(256, 16.0 * std::numbers::pi);
  const Field phi = gaussian(g, 0.5, 1.0, 1.0);
  SolveConfig ref;
  ref.params = kA;
  ref.mu = 0.05;
  ref.T = 0.5;
  ref.dt = 1.0 / 1024.0;
  ref.output_times = {0.5};
  const Field exact = evolve(phi, ref).fields.back();
  std::vector<double> err;
  for (double dt : {1.0 / 32.0, 1.0 / 64.0}) {
    SolveConfig cfg = ref;
    cfg.scheme = Scheme::PicardDuhamel;
    cfg.dt = dt;
    cfg.picard_window_steps = 4;
    const Trajectory tr = solve(phi, cfg);
    CHECK(tr.picard_residual < 1e-10);
    CHECK_FALSE(tr.iterations.empty());
    err.push_back(rel_l2_diff(tr.fields.back(), exact));
  }
  CHECK(err[0] / err[1] > 3.0);
  CHECK(err[0] / err[1] < 5.0);
}

TEST_CASE("step observer sees every accepted state in order") {
  const Grid g(64, 10.0);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 0.3;
  cfg.dt = 0.05;
  cfg.output_times = {0.3};
  std::vector<double> seen;
  cfg.on_step = [&](double t, const Field& u) {
    seen.push_back(t);
    CHECK(u.grid() == g);
  };
  const Trajectory tr = evolve(gaussian(g), cfg);
  REQUIRE(seen.size() == tr.steps + 1);
  CHECK(seen.front() == 0.0);
  CHECK_THAT(seen.back(), WithinAbs(0.3, 1e-15));
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i] > seen[i - 1]);
}

TEST_CASE("solver error paths") {
  const Grid g(64, 10.0);
  const Field phi = gaussian(g);
  SolveConfig cfg;
  cfg.params = kA;
  SECTION("invalid settings") {
    cfg.mu = -0.1;
    CHECK_THROWS_AS(evolve(phi, cfg), InvalidArgument);
    cfg.mu = 0.0;
    cfg.T = 0.0;
    CHECK_THROWS_AS(evolve(phi, cfg), InvalidArgument);
    cfg.T = 1.0;
    cfg.output_times = {2.0};
    CHECK_THROWS_AS(evolve(phi, cfg), InvalidArgument);
    cfg.output_times.clear();
    cfg.dealias = 0.4;
    CHECK_THROWS_AS(evolve(phi, cfg), InvalidArgument);
  }
  SECTION("Picard needs viscosity") {
    cfg.scheme = Scheme::PicardDuhamel;
    CHECK_THROWS_AS(solve(phi, cfg), InvalidArgument);
  }
  SECTION("an unstable step is reported as blowup") {
    cfg.T = 50.0;
    cfg.dt = 0.5;
    CHECK_THROWS_AS(evolve(phi * 1e4, cfg), BlowupDetected);
  }
  SECTION("a large datum defeats the contraction") {
    cfg.scheme = Scheme::PicardDuhamel;
    cfg.mu = 0.01;
    cfg.T = 1.0;
    cfg.dt = 0.1;
    cfg.picard_max_iter = 5;
    try {
      solve(phi * 1e3, cfg);
      FAIL("expected ContractionFailure");
    } catch (const ContractionFailure& e) {
      CHECK(e.iterations() >= 1);
      CHECK(e.window_start() == 0.0);
    }
  }
}

TEST_CASE("majorant closed form against an ODE integration") {
  for (double rho0 : {0.5, 2.0}) {
    for (double cs : {0.7, 1.3}) {
      const Majorant m = majorant(rho0, 0.4, cs, 1.5);
      CHECK_THAT(m.T_star, WithinRel(2.0 / (cs * std::sqrt(rho0)), 1e-15));
      using State = std::vector<double>;
      State y{rho0, 0.0};
      auto rhs = [&](const State& x, State& dx, double) {
        dx[0] = cs * std::pow(x[0], 1.5);
        dx[1] = x[0];
      };
      auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-14, 1e-14);
      double t = 0.0;
      for (double frac : {0.1, 0.5, 0.9}) {
        const double target = frac * m.T_star;
        odeint::integrate_adaptive(stepper, rhs, y, t, target, 1e-4);
        t = target;
        CHECK_THAT(m.rho1(t), WithinRel(y[0], 1e-8));
        CHECK_THAT(m.rho1_integral(t), WithinRel(y[1], 1e-8));
        const double h = 0.4 + 1.5 * y[1];
        CHECK_THAT(m.rho(t), WithinRel(y[0] + h * h, 1e-8));
      }
    }
  }
  const Majorant zero = majorant(0.0, 0.0, 1.0);
  CHECK(std::isinf(zero.T_star));
  CHECK(zero.rho(10.0) == 0.0);
  CHECK_THROWS_AS(majorant(-1.0, 0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(majorant(1.0, 0.0, 0.0), InvalidArgument);
}

TEST_CASE("vanishing-viscosity distances shrink") {
  const Grid g(512, 16.0 * std::numbers::pi);
  SolveConfig cfg;
  cfg.params = kA;
  cfg.T = 1.0;
  cfg.output_times = {0.5, 1.0};
  const std::vector<double> mus{1e-1, 1e-2, 1e-3, 1e-4};
  const auto table = mu_continuation(gaussian(g, 1.0, 1.0, 2.0), mus, cfg);
  REQUIRE(table.distances.size() == 3);
  CHECK(table.strictly_decreasing);
  const std::vector<double> one{0.1};
  CHECK_THROWS_AS(mu_continuation(gaussian(g), one, cfg), InvalidArgument);
}
