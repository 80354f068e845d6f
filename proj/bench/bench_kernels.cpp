// Serial reference kernels against their OpenMP versions. Thread count is
// taken from OMP_NUM_THREADS.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fkdv/kernels.hpp"
#include "fkdv/stein.hpp"

namespace {

namespace k = fkdv::kernels;

std::vector<double> random_reals(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<fkdv::cplx> random_complex(std::size_t n, unsigned seed) {
  const auto re = random_reals(n, seed), im = random_reals(n, seed + 1);
  std::vector<fkdv::cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

template <bool Parallel>
void BM_apply_symbol(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto spec = random_complex(n, 1);
  const auto sym = random_complex(n, 3);
  for (auto _ : state) {
    if constexpr (Parallel) k::parallel::apply_symbol(spec, sym);
    else k::serial::apply_symbol(spec, sym);
    benchmark::DoNotOptimize(spec.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_weighted_square_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -0.5 * n + static_cast<double>(i);
  const auto u = random_reals(n, 5);
  for (auto _ : state) {
    const double s = Parallel ? k::parallel::weighted_square_sum(x, u, 0.7, 1.0)
                              : k::serial::weighted_square_sum(x, u, 0.7, 1.0);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_spectral_square_sum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = random_complex(n, 7);
  auto w = random_reals(n, 9);
  for (double& v : w) v = std::abs(v);
  for (auto _ : state) {
    const double s = Parallel ? k::parallel::spectral_square_sum(spec, w, 1e-3)
                              : k::serial::spectral_square_sum(spec, w, 1e-3);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Point map over Stein integrals of a Gaussian, the workload it is used for.
template <bool Parallel>
void BM_map_points(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = -4.0 + 8.0 * static_cast<double>(i) / n;
  const fkdv::Profile g{[](double y) { return fkdv::cplx(std::exp(-y * y), 0.0); }, {}};
  const std::function<double(double)> f = [&g](double x) {
    return fkdv::stein_integral(g, 0.5, x);
  };
  for (auto _ : state) {
    auto out = Parallel ? k::parallel::map_points(xs, f) : k::serial::map_points(xs, f);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_apply_symbol<false>)->Name("apply_symbol/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_apply_symbol<true>)->Name("apply_symbol/parallel")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_weighted_square_sum<false>)->Name("weighted_square_sum/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_weighted_square_sum<true>)->Name("weighted_square_sum/parallel")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_spectral_square_sum<false>)->Name("spectral_square_sum/serial")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_spectral_square_sum<true>)->Name("spectral_square_sum/parallel")->RangeMultiplier(8)->Range(1 << 12, 1 << 21);
BENCHMARK(BM_map_points<false>)->Name("map_points/serial")->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_map_points<true>)->Name("map_points/parallel")->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
