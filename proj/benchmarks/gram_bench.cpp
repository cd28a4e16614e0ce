#include <benchmark/benchmark.h>

#include "nblab/optimize.hpp"

static void BM_InnerRhoRho(benchmark::State& state) {
  const auto a = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nblab::inner_rho_rho(a, a + 1));
}
BENCHMARK(BM_InnerRhoRho)->Arg(2)->Arg(20)->Arg(90);

static void BM_BestCoefficients(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nblab::best_coefficients(n).residual_squared);
}
BENCHMARK(BM_BestCoefficients)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
