#include "fkdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "fkdv/errors.hpp"

namespace fkdv::fft {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plan creation is not thread-safe in FFTW; execution on fresh arrays is.
// Plans are made once per size and live for the process.
PlanPair plans_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, PlanPair> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<cplx> in(n), out(n);
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int size = static_cast<int>(n);
  PlanPair p;
  p.forward = fftw_plan_dft_1d(size, pin, pout, FFTW_FORWARD, flags);
  p.backward = fftw_plan_dft_1d(size, pin, pout, FFTW_BACKWARD, flags);
  if (!p.forward || !p.backward) throw Error("FFTW plan creation failed");
  cache.emplace(n, p);
  return p;
}

void execute(fftw_plan plan, std::vector<cplx>& in, std::vector<cplx>& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

// x_j = -L/2 + j dx shifts every mode by exp(-i xi_k (-L/2)) = (-1)^k, and
// (-1)^k = (-1)^i for the FFT slot i because n is even.
Spectrum finish_forward(const Grid& grid, std::vector<cplx>& in) {
  const std::size_t n = grid.size();
  Spectrum out(n);
  execute(plans_for(n).forward, in, out);
  const double dx = grid.spacing();
  for (std::size_t i = 0; i < n; ++i) out[i] *= (i % 2 == 0) ? dx : -dx;
  return out;
}

}  // namespace

Spectrum forward(const Grid& grid, std::span<const double> samples) {
  std::vector<cplx> in(samples.begin(), samples.end());
  return finish_forward(grid, in);
}

Spectrum forward(const Grid& grid, std::span<const cplx> samples) {
  std::vector<cplx> in(samples.begin(), samples.end());
  return finish_forward(grid, in);
}

std::vector<cplx> inverse(const Grid& grid, std::span<const cplx> spectrum) {
  const std::size_t n = grid.size();
  const double scale = 1.0 / grid.length();
  std::vector<cplx> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i)
    in[i] = spectrum[i] * ((i % 2 == 0) ? scale : -scale);
  execute(plans_for(n).backward, in, out);
  return out;
}

}  // namespace fkdv::fft
