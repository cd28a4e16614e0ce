#include <benchmark/benchmark.h>

#include "nblab/special.hpp"

static void BM_ZetaCriticalLine(benchmark::State& state) {
  const double tau = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nblab::zeta({0.5, tau}));
}
BENCHMARK(BM_ZetaCriticalLine)->Arg(10)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_LogGamma(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nblab::log_gamma({0.25, 250.0}));
}
BENCHMARK(BM_LogGamma);
