#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fkdv/errors.hpp"
#include "fkdv/ladder.hpp"
#include "fkdv/norms.hpp"
#include "fkdv/spectral.hpp"
#include "test_support.hpp"

using namespace fkdv;
using namespace fkdv::testing;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

namespace {

const DispersionParams kA(-2.25);
const double kPi = std::numbers::pi;

Field hermite_gaussian(const Grid& g) {
  return Field::from_function(g, [](double x) { return (1.0 - 2.0 * x * x) * std::exp(-x * x); });
}

// ||D^r h||^2 for the Hermite-Gaussian: (1/4) 2^{r+3/2} Gamma(r + 5/2).
double hermite_homogeneous_sq(double r) {
  return 0.25 * std::pow(2.0, r + 1.5) * boost::math::tgamma(r + 2.5);
}

// Transform of e^{-x^2} cos(k0 x) and of x e^{-x^2} cos(k0 x) (up to a
// factor i): (sqrt(pi)/2) sum_{+-} e^{-(xi -+ k0)^2/4} and its xi-derivative.
double packet_hat(double xi, double k0) {
  return 0.5 * std::sqrt(kPi) *
         (std::exp(-(xi - k0) * (xi - k0) / 4.0) + std::exp(-(xi + k0) * (xi + k0) / 4.0));
}
double packet_hat_prime(double xi, double k0) {
  return 0.5 * std::sqrt(kPi) *
         (-(xi - k0) / 2.0 * std::exp(-(xi - k0) * (xi - k0) / 4.0) -
          (xi + k0) / 2.0 * std::exp(-(xi + k0) * (xi + k0) / 4.0));
}

// (1/pi) integral over xi > 0 of w(xi) F(xi)^2: the squared L2 norm of an
// even- or odd-spectrum function with |transform| = F.
template <class W, class F>
double spectral_sq(W w, F f, double k0) {
  auto g = [&](double xi) { return w(xi) * f(xi) * f(xi); };
  return (GK::integrate(g, 0.0, k0, 15, 1e-14) + GK::integrate(g, k0, k0 + 50.0, 15, 1e-14)) / kPi;
}

}  // namespace

TEST_CASE("mass and weighted norm of a Gaussian") {
  const Grid g(2048, 32.0);
  const Field f = gaussian(g);
  CHECK_THAT(mass(f), WithinRel(std::sqrt(kPi / 2.0), 1e-14));
  CHECK_THAT(weighted_norm(f, 0.0), WithinRel(std::pow(kPi / 2.0, 0.25), 1e-14));
  // || |x|^theta e^{-x^2} ||^2 = 2^{-theta-1/2} Gamma(theta + 1/2); |x|^{2 theta}
  // has a kink at 0, so the lattice sum errs by O(dx^{1+2 theta})
  const Field fine = gaussian(Grid(8192, 32.0));
  for (double theta : {0.5, 1.0, 1.4}) {
    const double exact = std::sqrt(std::pow(2.0, -theta - 0.5) * boost::math::tgamma(theta + 0.5));
    const double e1 = std::abs(weighted_norm(f, theta) - exact);
    const double e2 = std::abs(weighted_norm(fine, theta) - exact);
    CHECK(e2 < 1e-5 * exact);
    CHECK(e2 <= e1 * std::pow(4.0, 1.0 + 2.0 * theta) / 2.0 + 1e-15);
  }
}

TEST_CASE("Sobolev norm of a Gaussian against quadrature") {
  const Grid g(1024, 40.0);
  const Field f = gaussian(g);
  for (double s : {-1.0, 0.0, 1.0, 2.5}) {
    auto w = [&](double xi) { return std::pow(1.0 + xi * xi, s); };
    auto F = [](double xi) { return std::sqrt(kPi) * std::exp(-xi * xi / 4.0); };
    const double exact = std::sqrt(spectral_sq(w, F, 1.0));
    CHECK_THAT(sobolev_norm(f, s), WithinRel(exact, 1e-12));
  }
}

TEST_CASE("Hermite-Gaussian golden: homogeneous norms and energy") {
  const Grid g(8192, 512.0);
  const Field h = hermite_gaussian(g);
  // |xi|^{2r} |h^|^2 ~ |xi|^{2r+4} is not smooth at 0: lattice error ~ dxi^{2r+5}
  for (double r : {-1.25, -0.625, 0.0, 0.5, 1.0}) {
    CHECK_THAT(homogeneous_norm(h, r), WithinRel(std::sqrt(hermite_homogeneous_sq(r)), 1e-6));
  }
  auto cube = [](double x) {
    const double v = (1.0 - 2.0 * x * x) * std::exp(-x * x);
    return v * v * v;
  };
  const double int_cube = GK::integrate(cube, -12.0, 12.0, 15, 1e-15);
  const double exact = 0.5 * hermite_homogeneous_sq(-0.625) - int_cube / 6.0;
  CHECK_THAT(energy(h, kA), WithinRel(exact, 1e-7));
  // frozen value of the same quantity
  CHECK_THAT(exact, WithinRel(0.1427764379495, 1e-12));
}

TEST_CASE("Z-norm golden for a modulated Gaussian with k0 = 12") {
  const double k0 = 12.0, s = 1.0, theta = 1.2;
  const Grid g(8192, 256.0);
  const Field f = gaussian(g, 1.0, 1.0, k0);
  const ZNorms z = z_norms(f, s, theta, kA);
  REQUIRE(z.cross_terms_defined);

  auto F = [&](double xi) { return packet_hat(xi, k0); };
  auto Fx = [&](double xi) { return std::abs(packet_hat_prime(xi, k0)); };
  const double r = (1.0 + kA.a()) * theta;
  const double sob = spectral_sq([&](double xi) { return std::pow(1.0 + xi * xi, s); }, F, k0);
  const double hom = spectral_sq([&](double xi) { return std::pow(xi, 2.0 * r); }, F, k0);
  const double dow = spectral_sq(
      [&](double xi) { return std::pow(xi, 2.0 * (1.0 + kA.a()) * (theta - 1.0)); }, Fx, k0);
  boost::math::quadrature::tanh_sinh<double> ts;
  const double wei =
      2.0 * ts.integrate([&](double x) {
        const double v = std::exp(-x * x) * std::cos(k0 * x);
        return std::pow(x, 2.0 * theta) * v * v;
      }, 0.0, 12.0, 1e-14);
  // D^{1+a} f at x from its transform, then weighted by |x|^{theta-1}
  auto dphi = [&](double x) {
    auto h = [&](double xi) { return std::pow(xi, 1.0 + kA.a()) * F(xi) * std::cos(xi * x); };
    return (GK::integrate(h, 0.0, k0, 15, 1e-14) + GK::integrate(h, k0, k0 + 50.0, 15, 1e-14)) / kPi;
  };
  const double wd = 2.0 * ts.integrate([&](double x) {
    const double v = dphi(x);
    return std::pow(x, 2.0 * (theta - 1.0)) * v * v;
  }, 0.0, 12.0, 1e-10);

  CHECK_THAT(z.sobolev_sq, WithinRel(sob, 1e-12));
  CHECK_THAT(z.homogeneous_sq, WithinRel(hom, 1e-10));
  CHECK_THAT(z.derivative_of_weighted_sq, WithinRel(dow, 1e-10));
  CHECK_THAT(z.weighted_sq, WithinRel(wei, 1e-6));
  // |x|^{2(theta-1)} has a kink at 0: the lattice sum converges like dx^{1.4}
  const ZNorms zf = z_norms(gaussian(Grid(32768, 256.0), 1.0, 1.0, k0), s, theta, kA);
  const double e1 = std::abs(z.weighted_derivative_sq - wd);
  const double e2 = std::abs(zf.weighted_derivative_sq - wd);
  CHECK(e2 < 2e-3 * wd);
  CHECK(e2 * 5.0 < e1);
  // frozen oracle value
  CHECK_THAT(wd, WithinRel(0.000810058897, 1e-8));
  CHECK_THAT(z.z_sq(), WithinRel(z.sobolev_sq + z.homogeneous_sq + z.weighted_sq, 1e-15));
  CHECK(z.script_z_sq() > z.z_sq());

  const ZNorms low = z_norms(f, s, 0.5, kA);
  CHECK_FALSE(low.cross_terms_defined);
  CHECK(low.weighted_derivative_sq == 0.0);
  CHECK(low.script_z_sq() == low.z_sq());
}

TEST_CASE("homogeneous norms are log-convex in the order") {
  const Grid g(512, 50.0);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Field f = random_band_limited(g, rng, 100);
    const double r1 = uniform(rng, -2.0, 2.0), r2 = uniform(rng, -2.0, 2.0);
    const double mid = homogeneous_norm(f, 0.5 * (r1 + r2));
    CHECK(mid * mid <= homogeneous_norm(f, r1) * homogeneous_norm(f, r2) * (1.0 + 1e-12));
    CHECK_THAT(homogeneous_norm(f * -3.0, r1), WithinRel(3.0 * homogeneous_norm(f, r1), 1e-14));
    CHECK_THAT(homogeneous_norm(f, 0.0), WithinRel(f.l2_norm(), 1e-12));
  }
}

TEST_CASE("mean-carrying fields under the reject policy") {
  const Grid g(64, 10.0);
  const Field f = gaussian(g);
  CHECK_THROWS_AS(homogeneous_norm(f, -1.25, ZeroModePolicy::Reject), MeanCarryingField);
  CHECK_NOTHROW(homogeneous_norm(f, -1.25));
  CHECK_THROWS_AS(z_norms(f, 1.0, 1.2, kA, ZeroModePolicy::Reject), MeanCarryingField);
}

TEST_CASE("interpolation estimate") {
  const Grid g(4096, 128.0);
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const double sigma = uniform(rng, 0.5, 3.0), k = uniform(rng, 0.0, 6.0);
    const Field f = gaussian(g, 1.0, sigma, k);
    for (double beta : {0.25, 0.5, 0.75}) {
      const auto r = interpolation_check(f, 1.0, 1.0, beta);
      CHECK(r.ratio <= 1.0);
      CHECK(r.ratio > 0.0);
      CHECK_FALSE(r.degenerate_input);
    }
  }
  const auto zero = interpolation_check(Field::zeros(g), 1.0, 1.0, 0.5);
  CHECK(zero.degenerate_input);
  CHECK(zero.ratio == 0.0);
  CHECK_THROWS_AS(interpolation_check(gaussian(g), 1.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(interpolation_check(gaussian(g), 0.0, 1.0, 0.5), InvalidArgument);
}

TEST_CASE("evaluate dispatches to the functionals") {
  const Grid g(512, 40.0);
  const Field f = gaussian(g, 1.0, 1.0, 3.0);
  CHECK(evaluate(f, {NormKind::Mass}, kA).value == mass(f));
  CHECK(evaluate(f, {NormKind::Energy}, kA).value == energy(f, kA));
  CHECK(evaluate(f, {NormKind::Sobolev, 1.5}, kA).value == sobolev_norm(f, 1.5));
  CHECK(evaluate(f, {NormKind::Homogeneous, 0.0, -0.5}, kA).value == homogeneous_norm(f, -0.5));
  CHECK(evaluate(f, {NormKind::Weighted, 0.0, 0.0, 0.7}, kA).value == weighted_norm(f, 0.7));
  const auto z = z_norms(f, 1.0, 0.7, kA);
  CHECK_THAT(evaluate(f, {NormKind::Z, 1.0, 0.0, 0.7}, kA).value, WithinRel(std::sqrt(z.z_sq()), 1e-15));
  const auto zr = evaluate(f, {NormKind::ScriptZ, 1.0, 0.0, 0.7}, kA);
  CHECK(std::find(zr.flags.begin(), zr.flags.end(), "cross_terms_undefined") != zr.flags.end());
  CHECK(std::string(to_string(NormKind::ScriptZ)).size() > 0);
}

TEST_CASE("ladder evaluation separates finite from infinite weighted norms") {
  const auto ladder = doubling_ladder(64.0, 1024, 4);
  const auto gauss = [](const Grid& g) { return gaussian(g); };
  const auto algebraic = [](const Grid& g) {
    return Field::from_function(g, [](double x) { return 1.0 / (1.0 + x * x); });
  };
  const auto fin = evaluate_on_ladder(gauss, ladder, {NormKind::Weighted, 0.0, 0.0, 1.0}, kA);
  CHECK(fin.ladder_class == SeriesClass::Convergent);
  CHECK_FALSE(fin.overflow_by_scaling);
  CHECK(fin.ladder_values.size() == 4);
  CHECK(fin.value == fin.ladder_values.back());
  // |x|^{1.8} / (1 + x^2) is not square integrable
  const auto inf = evaluate_on_ladder(algebraic, ladder, {NormKind::Weighted, 0.0, 0.0, 1.8}, kA);
  CHECK(inf.ladder_class == SeriesClass::Divergent);
  CHECK(inf.overflow_by_scaling);
}
