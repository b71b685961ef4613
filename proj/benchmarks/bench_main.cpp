#include <benchmark/benchmark.h>

#include "cotlab/adapted_approx.hpp"
#include "cotlab/compatibility.hpp"
#include "cotlab/extreme_points.hpp"
#include "cotlab/instances.hpp"
#include "cotlab/rotation.hpp"
#include "cotlab/stopping.hpp"
#include "cotlab/transport.hpp"
#include "cotlab/wasserstein.hpp"

namespace {

using namespace cotlab;
using namespace cotlab::instances;

void BM_Wasserstein1Grid(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  SpacePtr space = grid_space(m);
  SplitMix64 rng(1);
  DiscreteMeasure a = random_measure(rng, space);
  DiscreteMeasure b = random_measure(rng, space);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein1(a, b));
}
BENCHMARK(BM_Wasserstein1Grid)->Arg(16)->Arg(64)->Arg(256);

void BM_RotationDemo(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rotation_demo(8, grid));
}
BENCHMARK(BM_RotationDemo)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CompatibilityCheckers(benchmark::State& state) {
  SplitMix64 rng(2);
  JointPathLaw law = random_compatible_law(rng, 3, 3, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_ci(law));
    benchmark::DoNotOptimize(check_mgale(law));
    benchmark::DoNotOptimize(check_proj(law));
    benchmark::DoNotOptimize(check_reverse(law));
  }
}
BENCHMARK(BM_CompatibilityCheckers);

void BM_Decompose(benchmark::State& state) {
  SplitMix64 rng(3);
  JointPathLaw law = random_mixture_law(rng, 2, 3, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_compatible(law));
}
BENCHMARK(BM_Decompose);

void BM_CausalLp(benchmark::State& state) {
  SplitMix64 rng(4);
  const PathDist mu = fair_coins(2);
  PathObjective c = random_objective(rng, mu.space, mu.space);
  for (auto _ : state)
    benchmark::DoNotOptimize(causal_value(mu, mu.space, c, Sense::maximize));
}
BENCHMARK(BM_CausalLp);

void BM_AdaptedApprox(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  JointPathLaw law = independent_product_instance(m);
  for (auto _ : state)
    benchmark::DoNotOptimize(approximate_adapted(law, Schedule::automatic(2)));
}
BENCHMARK(BM_AdaptedApprox)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_StoppingDecompose(benchmark::State& state) {
  auto [tau, mu] = uniform_stop_family(8);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_stopping(tau, mu));
}
BENCHMARK(BM_StoppingDecompose);

}  // namespace

BENCHMARK_MAIN();
