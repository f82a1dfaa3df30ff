#include <benchmark/benchmark.h>

#include "slok/ineq.hpp"
#include "slok/lmn.hpp"
#include "slok/logmink.hpp"
#include "slok/random.hpp"
#include "slok/transport.hpp"

using namespace slok;

static void BM_SolvePlan(benchmark::State& state) {
  const auto grid = make_circle_grid(static_cast<int>(state.range(0)));
  Rng rng(1);
  const auto mu = discrete(random_density(rng, grid)), nu = discrete(random_density(rng, grid));
  for (auto _ : state) benchmark::DoNotOptimize(solve_plan(mu, nu).plan.K);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolvePlan)->Arg(60)->Arg(180)->Arg(360)->Arg(720)->Unit(benchmark::kMillisecond);

static void BM_Sinkhorn(benchmark::State& state) {
  const auto grid = make_circle_grid(static_cast<int>(state.range(0)));
  Rng rng(2);
  const auto mu = discrete(random_density(rng, grid)), nu = discrete(random_density(rng, grid));
  for (auto _ : state) benchmark::DoNotOptimize(sinkhorn(mu, nu, 0.05).value);
}
BENCHMARK(BM_Sinkhorn)->Arg(60)->Arg(180)->Unit(benchmark::kMillisecond);

static void BM_MinimizeF0(benchmark::State& state) {
  const auto grid = make_circle_grid(static_cast<int>(state.range(0)));
  Rng rng(3);
  const auto mu = random_density(rng, grid);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_F0(mu).F0);
}
BENCHMARK(BM_MinimizeF0)->Arg(180)->Arg(360)->Arg(720)->Unit(benchmark::kMillisecond);

static void BM_FixedPoint(benchmark::State& state) {
  const auto grid = make_circle_grid(static_cast<int>(state.range(0)));
  Rng rng(4);
  const auto mu = random_density(rng, grid);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_F(mu).F);
}
BENCHMARK(BM_FixedPoint)->Arg(90)->Arg(180)->Unit(benchmark::kMillisecond)->Iterations(2);

static void BM_ApplyLCone(benchmark::State& state) {
  const auto grid = make_circle_grid(static_cast<int>(state.range(0)));
  Rng rng(5);
  const auto h = random_shape(rng).sample(grid);
  const auto u = h.values();
  for (auto _ : state) benchmark::DoNotOptimize(apply_L_cone(h, u));
}
BENCHMARK(BM_ApplyLCone)->Arg(360)->Arg(2880);

static void BM_Sweep(benchmark::State& state) {
  const auto suite = static_cast<Suite>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(suite, 50, 7, 180).min_margin);
  state.SetLabel(suite_name(suite));
}
BENCHMARK(BM_Sweep)
    ->Arg(static_cast<int>(Suite::entropy_transport))
    ->Arg(static_cast<int>(Suite::leblog))
    ->Arg(static_cast<int>(Suite::trfh))
    ->Arg(static_cast<int>(Suite::trfh_polytope))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
