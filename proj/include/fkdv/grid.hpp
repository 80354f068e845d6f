#pragma once

#include <cstddef>
#include <vector>

namespace fkdv {

/// Uniform periodic grid on [-L/2, L/2) standing in for the real line.
///
/// Points are x_j = -L/2 + j L/n. Spectral arrays use FFT ordering: slot i
/// holds wavenumber k = i for i < n/2 and k = i - n otherwise, with
/// frequency xi_k = 2 pi k / L. Slot n/2 is the unpaired Nyquist mode.
class Grid {
 public:
  Grid(std::size_t n, double length);

  std::size_t size() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(n_); }
  std::size_t nyquist_index() const noexcept { return n_ / 2; }

  double x(std::size_t j) const noexcept {
    return -0.5 * length_ + static_cast<double>(j) * spacing();
  }
  long wavenumber(std::size_t i) const noexcept {
    return i < n_ / 2 ? static_cast<long>(i)
                      : static_cast<long>(i) - static_cast<long>(n_);
  }
  double xi(std::size_t i) const noexcept;
  /// Lattice spacing in frequency, 2 pi / L.
  double dxi() const noexcept;
  /// |xi| of the Nyquist mode, pi n / L.
  double xi_max() const noexcept;

  std::vector<double> points() const;
  std::vector<double> frequencies() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t n_;
  double length_;
};

}  // namespace fkdv
