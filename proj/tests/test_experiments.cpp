#include <catch_amalgamated.hpp>

#include <limits>

#include "fkdv/errors.hpp"
#include "fkdv/experiments.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/propagators.hpp"
#include "test_support.hpp"

using namespace fkdv;
using namespace fkdv::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ExperimentSpec small_spec(Datum d) {
  ExperimentSpec s;
  s.params = DispersionParams(-2.25);
  s.datum = std::move(d);
  s.ladder = doubling_ladder(32.0, 256, 3);
  s.thetas = {0.0, 0.3};
  s.times = {0.5, 1.0};
  return s;
}

const ClassifiedSeries& get(const Report& r, const std::string& group, double t, double theta) {
  const ClassifiedSeries* s = r.find(group, t, theta);
  REQUIRE(s != nullptr);
  return *s;
}

}  // namespace

TEST_CASE("data on the lattice") {
  const Grid g(512, 64.0);
  SECTION("bump spectrum") {
    const Field f = make_datum(BumpSpectrumDatum{2.0, 1.5}, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double expect = i == g.nyquist_index() ? 0.0
                                                   : 2.0 * smooth_step(2.0 - std::abs(g.xi(i)) / 1.5);
      CHECK_THAT(f.spectrum()[i].real(), WithinAbs(expect, 1e-12));
    }
  }
  SECTION("gaussian and algebraic samples") {
    const Field f = make_datum(GaussianDatum{0.5, 2.0, 3.0, 0.0}, g);
    const Field a = make_datum(AlgebraicDatum{0.5, 1.7, 3.0, 0.0}, g);
    for (std::size_t j = 0; j < g.size(); j += 11) {
      const double x = g.x(j);
      CHECK_THAT(f[j], WithinAbs(0.5 * std::exp(-x * x / 4.0) * std::cos(3.0 * x), 1e-15));
      CHECK_THAT(a[j], WithinAbs(0.5 * std::pow(1.0 + x * x, -0.85) * std::cos(3.0 * x), 1e-15));
    }
  }
  SECTION("high-pass removes low frequencies only") {
    const Field f = make_datum(GaussianDatum{1.0, 1.0, 4.0, 1.0}, g);
    const Field raw = make_datum(GaussianDatum{1.0, 1.0, 4.0, 0.0}, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = std::abs(g.xi(i));
      if (xi <= 1.0) CHECK(std::abs(f.spectrum()[i]) == 0.0);
      if (xi >= 3.0) CHECK_THAT(std::abs(f.spectrum()[i] - raw.spectrum()[i]), WithinAbs(0.0, 1e-14));
    }
  }
  SECTION("custom samples are interpolated and extended by zero") {
    const Field c = make_datum(CustomDatum{{-1.0, 0.0, 2.0}, {0.0, 1.0, 0.0}}, g);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.x(j);
      const double expect = x < -1.0 || x > 2.0 ? 0.0 : x < 0.0 ? 1.0 + x : 1.0 - x / 2.0;
      CHECK_THAT(c[j], WithinAbs(expect, 1e-15));
    }
    CHECK_THROWS_AS(make_datum(CustomDatum{{0.0, 0.0}, {1.0, 1.0}}, g), InvalidArgument);
    CHECK_THROWS_AS(make_datum(CustomDatum{{0.0}, {1.0}}, g), InvalidArgument);
  }
  CHECK_THROWS_AS(make_datum(GaussianDatum{1.0, 0.0}, g), InvalidArgument);
  CHECK_THROWS_AS(make_datum(AlgebraicDatum{1.0, 0.5}, g), InvalidArgument);
  CHECK(std::string(datum_name(BumpSpectrumDatum{})) == "bump_spectrum");
}

TEST_CASE("decay classes of the data") {
  const DispersionParams p(-2.25);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(*datum_decay_class(BumpSpectrumDatum{}, p) == p.b_crit());
  CHECK(*datum_decay_class(GaussianDatum{}, p) == p.b_crit());
  CHECK(*datum_decay_class(GaussianDatum{1, 1, 4, 1}, p) == inf);
  CHECK_THAT(*datum_decay_class(AlgebraicDatum{1, 1.7, 3, 0.5}, p), WithinRel(1.2, 1e-15));
  CHECK(*datum_decay_class(AlgebraicDatum{1, 1.7}, p) == p.b_crit());
  CHECK(*datum_decay_class(BumpSpectrumDatum{0.0}, p) == inf);
  CHECK_FALSE(datum_decay_class(CustomDatum{}, p).has_value());
}

TEST_CASE("experiment specs are validated") {
  ExperimentSpec s = small_spec(GaussianDatum{});
  CHECK_NOTHROW(validate(s));
  SECTION("single rung") { s.ladder.erase(s.ladder.begin() + 1, s.ladder.end()); CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("mixed spacing") { s.ladder[1] = Grid(256, 64.0); CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("no padding") { s.padding = 0; CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("theta too large") { s.thetas = {2.0}; CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("negative theta") { s.thetas = {-0.1}; CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("time zero") { s.times = {0.0}; CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("zero_plus") { s.zero_plus = 1.0; CHECK_THROWS_AS(validate(s), InvalidArgument); }
  SECTION("solver settings") { s.solver.mu = 2.0; CHECK_THROWS_AS(validate(s), InvalidArgument); }
}

TEST_CASE("windowed weighted norm restricts to the window") {
  const Grid g(512, 32.0);
  const Field f = gaussian(g, 1.0, 4.0);
  CHECK_THAT(windowed_weighted_norm(f, 0.7, 16.0), WithinRel(weighted_norm(f, 0.7), 1e-14));
  const Field one = Field::from_function(g, [](double) { return 1.0; });
  CHECK_THAT(windowed_weighted_norm(one, 0.0, 4.0), WithinRel(std::sqrt(8.0), 1e-12));
  CHECK(windowed_weighted_norm(one, 0.0, 0.0) == 0.0);
}

TEST_CASE("sweep: theta = 0 reproduces the conserved mass on every rung") {
  ExperimentSpec s = small_spec(GaussianDatum{0.3, 1.0, 2.0, 0.0});
  const Report r = decay_threshold_sweep(s);
  for (const char* group : {"linear", "nonlinear"}) {
    for (double t : s.times) {
      const auto& series = get(r, group, t, 0.0);
      REQUIRE(series.values.size() == s.ladder.size());
      for (std::size_t k = 0; k < s.ladder.size(); ++k) {
        const double m = std::sqrt(mass(make_datum(s.datum, s.ladder[k])));
        CHECK_THAT(series.values[k], WithinRel(m, 1e-9));
      }
    }
  }
}

TEST_CASE("sweep: the linear baseline does not depend on the nonlinear run") {
  ExperimentSpec s = small_spec(BumpSpectrumDatum{0.2});
  ExperimentSpec lin = s;
  lin.solver.nonlinear = false;
  const Report a = decay_threshold_sweep(s), b = decay_threshold_sweep(lin);
  CHECK(b.find("nonlinear", 1.0, 0.3) == nullptr);
  for (double t : s.times)
    for (double th : s.thetas) CHECK(get(a, "linear", t, th).values == get(b, "linear", t, th).values);
  // and it equals the propagator applied directly
  for (std::size_t k = 0; k < s.ladder.size(); ++k) {
    const Field u = linear_propagate(make_datum(s.datum, s.ladder[k]), 1.0, s.params);
    CHECK_THAT(get(a, "linear", 1.0, 0.3).values[k], WithinRel(weighted_norm(u, 0.3), 1e-13));
  }
}

TEST_CASE("sweep reports are deterministic") {
  const ExperimentSpec s = small_spec(GaussianDatum{0.3, 1.0, 2.0, 0.0});
  const Report a = decay_threshold_sweep(s), b = decay_threshold_sweep(s);
  REQUIRE(a.series.size() == b.series.size());
  for (std::size_t i = 0; i < a.series.size(); ++i) {
    CHECK(a.series[i].values == b.series[i].values);
    CHECK(a.series[i].classification == b.series[i].classification);
  }
  CHECK(a.checks == b.checks);
  CHECK(a.series.size() == 2 * s.thetas.size() * s.times.size());
}

TEST_CASE("extra decay: the Duhamel term vanishes without the nonlinearity") {
  ExperimentSpec s = small_spec(AlgebraicDatum{0.1, 1.7, 3.0, 0.5});
  s.ladder = doubling_ladder(32.0, 512, 2);
  s.thetas = {1.2};
  s.times = {0.5};
  s.solver.nonlinear = false;
  const Report r = extra_decay_check(s);
  const auto& d = get(r, "duhamel", 0.5, 1.2);
  for (double v : d.values) CHECK(v == 0.0);
  CHECK(d.classification == SeriesClass::Convergent);
}

TEST_CASE("extra decay: the Duhamel term scales with the amplitude squared") {
  ExperimentSpec s = small_spec(AlgebraicDatum{0.02, 1.7, 3.0, 0.5});
  s.ladder = doubling_ladder(32.0, 512, 2);
  s.padding = 2;
  s.thetas = {1.2};
  s.times = {0.5};
  const Report big = extra_decay_check(s);
  std::get<AlgebraicDatum>(s.datum).amplitude = 0.01;
  const Report small = extra_decay_check(s);
  const auto& b = get(big, "duhamel", 0.5, 1.2);
  const auto& m = get(small, "duhamel", 0.5, 1.2);
  for (std::size_t k = 0; k < b.values.size(); ++k)
    CHECK_THAT(b.values[k] / m.values[k], WithinRel(4.0, 1e-2));
  // the linear part scales linearly
  CHECK_THAT(get(big, "linear", 0.5, 1.2).values[0] / get(small, "linear", 0.5, 1.2).values[0],
             WithinRel(2.0, 1e-12));
  const auto& table = big.tables.front();
  CHECK(table.name == "cross_check");
  for (const auto& row : table.rows) CHECK(row.back() <= kDuhamelCrossCheckTol);
}

TEST_CASE("two-time probe on a filtered packet") {
  ExperimentSpec s = small_spec(GaussianDatum{1.0, 1.0, 4.0, 1.0});
  s.ladder = doubling_ladder(32.0, 512, 3);
  s.thetas = {0.5, 1.1, 1.3};
  s.times = {1.0};
  s.solver.T = 1.0;
  const Report r = ucp_two_time_probe(s);
  // theta <= 1 is outside the range of the statement and is skipped
  CHECK(r.find("cond1_weighted", 0.0, 0.5) == nullptr);
  REQUIRE(r.checks.size() == 2);
  for (const Check& c : r.checks) CHECK(c.passed);
  CHECK(get(r, "identity", 0.25, s.zero_plus).classification == SeriesClass::Convergent);
  CHECK_THROWS_AS(ucp_two_time_probe(s, 0.5, 0.5), InvalidArgument);
}

TEST_CASE("critical probe") {
  ExperimentSpec s = small_spec(GaussianDatum{0.0, 1.0, 4.0, 1.0});
  s.times = {1.0};
  s.solver.T = 1.0;
  const Report zero = ucp_critical_vanishing_probe(s);
  REQUIRE_FALSE(zero.checks.empty());
  CHECK(zero.all_passed());
  CHECK_THROWS_AS(ucp_critical_vanishing_probe(s, 0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(ucp_critical_vanishing_probe(s, 0.5, 0.25), InvalidArgument);
}
