#pragma once

#include <complex>
#include <vector>

namespace fkdv::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule, nodes by Newton iteration on P_m. Rules are
/// computed once per m and shared.
const Rule& gauss_legendre(int m);

/// Composite rule: [a, b] split into `panels` equal panels.
template <class F>
auto integrate(F&& f, double a, double b, const Rule& rule, int panels) {
  using R = decltype(f(a));
  R total{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += acc * (0.5 * h);
  }
  return total;
}

}  // namespace fkdv::quad
