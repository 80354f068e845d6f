#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fkdv/field.hpp"

namespace fkdv {

/// What a negative-order multiplier does with the xi = 0 mode, where its
/// symbol diverges.
enum class ZeroModePolicy {
  Annihilate,  ///< multiplier forced to 0 at xi = 0
  Reject,      ///< MeanCarryingField if the input has nonzero mean
};

using Multiplier = std::function<cplx(double xi)>;

/// spectrum_k <- m(xi_k) spectrum_k, returning a real field.
///
/// m must satisfy m(-xi) = conj(m(xi)) on the lattice (SymmetryViolation
/// otherwise). The Nyquist mode has no partner: it is kept when m is real
/// there and zeroed when it is not.
Field apply_multiplier(const Field& f, const Multiplier& m);

/// m sampled on the lattice, in FFT slot order.
std::vector<cplx> sample_symbol(const Grid& grid, const Multiplier& m);

/// spectrum_k <- symbol[k] spectrum_k with no symmetry check. The caller
/// guarantees the symbol is Hermitian; any anti-Hermitian part is projected
/// away when the result is built.
Field apply_symbol(const Field& f, std::span<const cplx> symbol);

/// True when m(-xi_k) = conj(m(xi_k)) for every paired lattice mode and m(0)
/// is real, to relative tolerance tol.
bool is_hermitian(const Grid& grid, const Multiplier& m, double tol = 1e-12);

/// D^s f with symbol |xi|^s. s = 0 is the identity. For s != 0 the Nyquist
/// mode is zeroed; for s < 0 the zero mode follows the policy, and for s > 0
/// it is 0.
Field fractional_derivative(const Field& f, double s,
                            ZeroModePolicy policy = ZeroModePolicy::Annihilate);

/// Hilbert transform, symbol -i sgn(xi) (cos -> sin), zero mode annihilated.
Field hilbert_transform(const Field& f);

/// d/dx with symbol i xi; Nyquist zeroed.
Field derivative(const Field& f);

/// Bessel potential J^s with symbol (1 + xi^2)^{s/2}.
Field bessel_potential(const Field& f, double s);

/// Pointwise product with the sawtooth box coordinate x_j.
Field multiply_by_x(const Field& f);

/// Pointwise product with |x_j|^theta (0^0 = 1).
Field multiply_by_abs_x_power(const Field& f, double theta);

/// Pointwise product with <x_j>^b = (1 + x_j^2)^{b/2}.
Field multiply_by_japanese_x(const Field& f, double b);

/// Pointwise square.
Field square(const Field& f);

}  // namespace fkdv
