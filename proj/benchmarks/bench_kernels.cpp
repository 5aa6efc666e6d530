#include <benchmark/benchmark.h>

#include "hlslab/kernels.hpp"

using namespace hlslab;

static void BM_PhiRadial(benchmark::State& state) {
  const double r = state.range(0) / 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::phi_radial(3, 4.0, r));
}
BENCHMARK(BM_PhiRadial)->Arg(500)->Arg(999);

static void BM_PsiRadialNearBoundary(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::psi_radial(3, 2.0, 1.0 - 1e-8));
}
BENCHMARK(BM_PsiRadialNearBoundary);

static void BM_FunkHeckeMultipliers(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::funk_hecke_multipliers(lmax, -3.0, true, 1.0, 0.97));
  state.SetItemsProcessed(state.iterations() * (lmax + 1));
}
BENCHMARK(BM_FunkHeckeMultipliers)->Arg(18)->Arg(36)->Arg(48);

BENCHMARK_MAIN();
