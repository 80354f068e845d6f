#include "fkdv/field.hpp"

#include <algorithm>
#include <cmath>

#include "fkdv/errors.hpp"

namespace fkdv {

Field::Field(Grid grid, std::vector<double> samples, Spectrum spectrum,
             double imag_residual)
    : grid_(grid),
      samples_(std::move(samples)),
      spectrum_(std::move(spectrum)),
      imag_residual_(imag_residual) {}

Field Field::from_samples(Grid grid, std::vector<double> samples) {
  if (samples.size() != grid.size())
    throw InvalidArgument("sample count does not match grid size");
  for (double v : samples)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite sample");
  Spectrum spec = fft::forward(grid, samples);
  // Exact Hermitian symmetry for the stored spectrum.
  const std::size_t n = grid.size();
  spec[0] = spec[0].real();
  spec[n / 2] = spec[n / 2].real();
  for (std::size_t i = 1; i < n / 2; ++i) {
    const cplx avg = 0.5 * (spec[i] + std::conj(spec[n - i]));
    spec[i] = avg;
    spec[n - i] = std::conj(avg);
  }
  return Field(grid, std::move(samples), std::move(spec), 0.0);
}

Field Field::from_spectrum(Grid grid, Spectrum spectrum) {
  const std::size_t n = grid.size();
  if (spectrum.size() != n)
    throw InvalidArgument("spectrum length does not match grid size");
  // Split into Hermitian part h and anti-Hermitian part; Re(ifft(s)) equals
  // ifft(h), so the samples below are consistent with the stored h.
  double anti = 0.0;
  auto split_pair = [&](std::size_t i, std::size_t j) {
    const cplx h = 0.5 * (spectrum[i] + std::conj(spectrum[j]));
    const cplx g = 0.5 * (spectrum[i] - std::conj(spectrum[j]));
    anti += std::norm(g) * (i == j ? 1.0 : 2.0);
    spectrum[i] = h;
    spectrum[j] = std::conj(h);
  };
  split_pair(0, 0);
  split_pair(n / 2, n / 2);
  for (std::size_t i = 1; i < n / 2; ++i) split_pair(i, n - i);

  const auto values = fft::inverse(grid, spectrum);
  std::vector<double> samples(n);
  for (std::size_t j = 0; j < n; ++j) {
    samples[j] = values[j].real();
    if (!std::isfinite(samples[j]))
      throw InvalidArgument("non-finite spectrum");
  }
  return Field(grid, std::move(samples), std::move(spectrum),
               std::sqrt(anti / grid.length()));
}

Field Field::zeros(Grid grid) {
  return Field(grid, std::vector<double>(grid.size(), 0.0),
               Spectrum(grid.size(), cplx{}), 0.0);
}

double Field::mean() const noexcept {
  return spectrum_[0].real() / grid_.length();
}

double Field::l2_norm() const noexcept {
  double acc = 0.0;
  for (double v : samples_) acc += v * v;
  return std::sqrt(acc * grid_.spacing());
}

double Field::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw InvalidArgument("fields live on different grids");
}

}  // namespace

Field Field::operator+(const Field& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<double> s(samples_);
  Spectrum sp(spectrum_);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] += other.samples_[i];
    sp[i] += other.spectrum_[i];
  }
  return Field(grid_, std::move(s), std::move(sp), 0.0);
}

Field Field::operator-(const Field& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<double> s(samples_);
  Spectrum sp(spectrum_);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] -= other.samples_[i];
    sp[i] -= other.spectrum_[i];
  }
  return Field(grid_, std::move(s), std::move(sp), 0.0);
}

Field Field::operator*(double scale) const {
  std::vector<double> s(samples_);
  Spectrum sp(spectrum_);
  for (auto& v : s) v *= scale;
  for (auto& v : sp) v *= scale;
  return Field(grid_, std::move(s), std::move(sp), 0.0);
}

double inner(const Field& f, const Field& g) {
  require_same_grid(f.grid(), g.grid());
  double acc = 0.0;
  for (std::size_t j = 0; j < f.grid().size(); ++j) acc += f[j] * g[j];
  return acc * f.grid().spacing();
}

}  // namespace fkdv
