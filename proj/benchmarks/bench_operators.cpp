#include <benchmark/benchmark.h>

#include "hlslab/operators.hpp"
#include "hlslab/solver.hpp"

using namespace hlslab;

static void BM_SpectralExtend(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto e = ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25);
  auto ball = quad::ball_rule(3, level, quad::GradingDescriptor{});
  ops::ExtensionOperator op(ball, ops::extension_kernel(e));
  auto f = ops::random_lognormal(ball->sphere, 1);
  for (auto _ : state) {
    auto out = op.extend(f);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ball->size()));
}
BENCHMARK(BM_SpectralExtend)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SpectralTrace(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, level);
  ops::ExtensionOperator op(ball, ops::extension_kernel(e));
  auto g = ops::random_lognormal(ball, 2);
  for (auto _ : state) {
    auto out = op.trace(g);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_SpectralTrace)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_DirectExtend(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, level);
  ops::ExtensionOperator op(ball, ops::extension_kernel(e), ops::EvalPath::Direct);
  auto f = ops::random_lognormal(ball->sphere, 1);
  for (auto _ : state) {
    auto out = op.extend(f);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_DirectExtend)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SubcriticalSolve(benchmark::State& state) {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  solver::SolveConfig cfg;
  cfg.seed = 1;
  for (auto _ : state) {
    auto res = solver::solve_subcritical(e, cfg, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(res.xi_estimate);
  }
}
BENCHMARK(BM_SubcriticalSolve)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
