#include "fkdv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "fkdv/errors.hpp"

namespace fkdv::quad {

namespace {

Rule build(int m) {
  Rule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_m.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[m - 1 - i] = x;
    r.weights[i] = w;
    r.weights[m - 1 - i] = w;
  }
  if (m % 2 == 1) r.nodes[m / 2] = 0.0;
  return r;
}

}  // namespace

const Rule& gauss_legendre(int m) {
  if (m < 1 || m > 256) throw InvalidArgument("Gauss-Legendre order out of range");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, build(m)).first;
  return it->second;
}

}  // namespace fkdv::quad
