#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fkdv/grid.hpp"

namespace fkdv {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

/// Transform contract shared by every module:
///   forward:  F_k = sum_j f(x_j) exp(-i xi_k x_j) dx
///   inverse:  f(x_j) = (1/L) sum_k F_k exp(i xi_k x_j)
/// so that sum_j |f_j|^2 dx = (1/L) sum_k |F_k|^2, and F_k approximates the
/// continuous transform of a function decaying inside the box.
///
/// Plans are cached per size behind a mutex; execution is thread-safe.
namespace fft {

Spectrum forward(const Grid& grid, std::span<const double> samples);
Spectrum forward(const Grid& grid, std::span<const cplx> samples);
std::vector<cplx> inverse(const Grid& grid, std::span<const cplx> spectrum);

}  // namespace fft
}  // namespace fkdv
