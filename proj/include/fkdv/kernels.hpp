#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fkdv/fft.hpp"

// Data-parallel inner loops. Every kernel exists twice: an OpenMP version
// used by the library and a plain serial reference kept for tests and the
// benchmark. Reductions sum fixed-size blocks and then combine the block
// totals in index order, so results do not depend on the thread count.
namespace fkdv::kernels {

inline constexpr std::size_t kReductionBlock = 2048;

namespace serial {

/// spectrum[i] *= symbol[i]
void apply_symbol(std::span<cplx> spectrum, std::span<const cplx> symbol);

/// sum_j |x_j|^{2 theta} u_j^2 dx, with 0^0 = 1.
double weighted_square_sum(std::span<const double> x,
                           std::span<const double> u, double theta, double dx);

/// (1/L) sum_k w(xi_k) |F_k|^2 with w given per slot.
double spectral_square_sum(std::span<const cplx> spectrum,
                           std::span<const double> weight, double inv_length);

/// out[i] = f(xs[i]); f must be safe to call concurrently.
std::vector<double> map_points(std::span<const double> xs,
                               const std::function<double(double)>& f);

}  // namespace serial

namespace parallel {

void apply_symbol(std::span<cplx> spectrum, std::span<const cplx> symbol);
double weighted_square_sum(std::span<const double> x,
                           std::span<const double> u, double theta, double dx);
double spectral_square_sum(std::span<const cplx> spectrum,
                           std::span<const double> weight, double inv_length);
std::vector<double> map_points(std::span<const double> xs,
                               const std::function<double(double)>& f);

}  // namespace parallel
}  // namespace fkdv::kernels
