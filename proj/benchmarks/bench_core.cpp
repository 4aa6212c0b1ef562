#include <benchmark/benchmark.h>

#include <cmath>

#include "pofrac/analysis.hpp"
#include "pofrac/mittag_leffler.hpp"
#include "pofrac/solver.hpp"
#include "pofrac/zeta_density.hpp"

using namespace pofrac;

static void BM_MittagLefflerSeries(benchmark::State& state) {
  double z = -0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mittag_leffler(0.7, z));
    z = z <= -4.9 ? -0.01 : z - 0.01;
  }
}
BENCHMARK(BM_MittagLefflerSeries);

static void BM_MittagLefflerKernel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(mittag_leffler(0.7, -25.0));
}
BENCHMARK(BM_MittagLefflerKernel);

static void BM_ZetaDensity(benchmark::State& state) {
  const FractionalOrder order(0.6);
  double th = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(zeta_density(order, th));
    th = th >= 3.0 ? 0.05 : th + 0.05;
  }
}
BENCHMARK(BM_ZetaDensity);

static void BM_SolveAbm(benchmark::State& state) {
  const ModelParams p = ModelParams::all_ones();
  const State x0(1, 1, 1);
  SolverConfig cfg{FractionalOrder(0.8)};
  cfg.horizon = 1.0;
  cfg.n_steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_abm(p, x0, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveAbm)->Arg(128)->Arg(256)->Arg(512)->Complexity();

static void BM_SolveMildPicard(benchmark::State& state) {
  const ModelParams p = ModelParams::all_ones();
  const State x0(1, 1, 1);
  SolverConfig cfg{FractionalOrder(0.8)};
  cfg.horizon = 1.0;
  cfg.n_steps = static_cast<int>(state.range(0));
  cfg.method = SolverMethod::mild_picard;
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_mild_picard(p, x0, cfg));
}
BENCHMARK(BM_SolveMildPicard)->Arg(128)->Arg(256);

static void BM_EmpiricalLipschitz(benchmark::State& state) {
  const ModelParams p = ModelParams::all_ones();
  const StateBox box{1.0, 1.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        empirical_lipschitz(p, box, static_cast<int>(state.range(0)), 7));
}
BENCHMARK(BM_EmpiricalLipschitz)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
