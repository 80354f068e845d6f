#include "fkdv/spectral.hpp"

#include <cmath>

#include "fkdv/errors.hpp"
#include "fkdv/kernels.hpp"

namespace fkdv {

namespace {

bool close(cplx a, cplx b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= tol * scale;
}

Field pointwise(const Field& f, double (*weight)(double, double),
                double param) {
  const Grid& g = f.grid();
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    out[j] = weight(g.x(j), param) * f[j];
  return Field::from_samples(g, std::move(out));
}

}  // namespace

std::vector<cplx> sample_symbol(const Grid& grid, const Multiplier& m) {
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = m(grid.xi(i));
  return out;
}

Field apply_symbol(const Field& f, std::span<const cplx> symbol) {
  if (symbol.size() != f.grid().size())
    throw InvalidArgument("symbol length does not match grid size");
  Spectrum s(f.spectrum().begin(), f.spectrum().end());
  kernels::parallel::apply_symbol(s, symbol);
  return Field::from_spectrum(f.grid(), std::move(s));
}

bool is_hermitian(const Grid& grid, const Multiplier& m, double tol) {
  const std::size_t n = grid.size();
  const cplx m0 = m(0.0);
  if (!close(m0, std::conj(m0), tol)) return false;
  for (std::size_t i = 1; i < n / 2; ++i) {
    const double xi = grid.xi(i);
    if (!close(m(-xi), std::conj(m(xi)), tol)) return false;
  }
  return true;
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  auto symbol = sample_symbol(g, m);
  for (const auto& v : symbol)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("multiplier is not finite on the lattice");
  if (!close(symbol[0], std::conj(symbol[0]), 1e-12))
    throw SymmetryViolation("multiplier is not real at xi = 0");
  for (std::size_t i = 1; i < n / 2; ++i)
    if (!close(symbol[n - i], std::conj(symbol[i]), 1e-12))
      throw SymmetryViolation("multiplier violates m(-xi) = conj(m(xi)) at xi = " +
                              std::to_string(g.xi(i)));
  cplx& nyq = symbol[n / 2];
  if (std::abs(nyq.imag()) > 1e-12 * std::max(std::abs(nyq), 1.0))
    nyq = 0.0;
  else
    nyq = nyq.real();
  return apply_symbol(f, symbol);
}

Field fractional_derivative(const Field& f, double s, ZeroModePolicy policy) {
  if (!std::isfinite(s)) throw InvalidArgument("derivative order must be finite");
  if (s == 0.0) return f;
  const Grid& g = f.grid();
  if (s < 0.0 && policy == ZeroModePolicy::Reject) {
    const double norm = f.l2_norm();
    if (std::abs(f.mean()) > 1e-13 * norm)
      throw MeanCarryingField(f.mean(), norm);
  }
  const std::size_t n = g.size();
  std::vector<cplx> symbol(n);
  for (std::size_t i = 1; i < n; ++i)
    symbol[i] = std::pow(std::abs(g.xi(i)), s);
  symbol[0] = 0.0;
  symbol[n / 2] = 0.0;
  return apply_symbol(f, symbol);
}

Field hilbert_transform(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  std::vector<cplx> symbol(n);
  for (std::size_t i = 1; i < n / 2; ++i) {
    symbol[i] = cplx(0.0, -1.0);
    symbol[n - i] = cplx(0.0, 1.0);
  }
  return apply_symbol(f, symbol);
}

Field derivative(const Field& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.size();
  std::vector<cplx> symbol(n);
  for (std::size_t i = 1; i < n; ++i) symbol[i] = cplx(0.0, g.xi(i));
  symbol[n / 2] = 0.0;
  return apply_symbol(f, symbol);
}

Field bessel_potential(const Field& f, double s) {
  if (!std::isfinite(s)) throw InvalidArgument("potential order must be finite");
  if (s == 0.0) return f;
  const Grid& g = f.grid();
  std::vector<cplx> symbol(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.xi(i);
    symbol[i] = std::pow(1.0 + xi * xi, 0.5 * s);
  }
  return apply_symbol(f, symbol);
}

Field multiply_by_x(const Field& f) {
  return pointwise(f, [](double x, double) { return x; }, 0.0);
}

Field multiply_by_abs_x_power(const Field& f, double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("weight exponent must be finite");
  return pointwise(
      f,
      [](double x, double th) {
        return th == 0.0 ? 1.0 : std::pow(std::abs(x), th);
      },
      theta);
}

Field multiply_by_japanese_x(const Field& f, double b) {
  if (!std::isfinite(b)) throw InvalidArgument("weight exponent must be finite");
  return pointwise(
      f, [](double x, double bb) { return std::pow(1.0 + x * x, 0.5 * bb); },
      b);
}

Field square(const Field& f) {
  const Grid& g = f.grid();
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = f[j] * f[j];
  return Field::from_samples(g, std::move(out));
}

}  // namespace fkdv
