#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fkdv/fft.hpp"
#include "fkdv/grid.hpp"

namespace fkdv {

/// Real-valued function sampled on a Grid, with its spectrum.
///
/// Immutable after construction: samples and spectrum are both computed up
/// front, so concurrent readers never race on a lazy cache. The stored
/// spectrum is always Hermitian; when built from a spectrum that is not, the
/// anti-Hermitian part (the would-be imaginary component of the samples) is
/// dropped and its L2 size is kept in imag_residual().
class Field {
 public:
  static Field from_samples(Grid grid, std::vector<double> samples);
  static Field from_spectrum(Grid grid, Spectrum spectrum);
  static Field zeros(Grid grid);

  template <class F>
  static Field from_function(const Grid& grid, F&& f) {
    std::vector<double> s(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) s[j] = f(grid.x(j));
    return from_samples(grid, std::move(s));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<const cplx> spectrum() const noexcept { return spectrum_; }
  double operator[](std::size_t j) const noexcept { return samples_[j]; }

  /// (1/L) * integral of f over the box.
  double mean() const noexcept;
  /// sqrt(sum f_j^2 dx).
  double l2_norm() const noexcept;
  double sup_norm() const noexcept;
  double imag_residual() const noexcept { return imag_residual_; }

  Field operator+(const Field& other) const;
  Field operator-(const Field& other) const;
  Field operator*(double scale) const;
  friend Field operator*(double scale, const Field& f) { return f * scale; }

 private:
  Field(Grid grid, std::vector<double> samples, Spectrum spectrum,
        double imag_residual);

  Grid grid_;
  std::vector<double> samples_;
  Spectrum spectrum_;
  double imag_residual_ = 0.0;
};

/// L2 inner product sum f_j g_j dx.
double inner(const Field& f, const Field& g);

}  // namespace fkdv
