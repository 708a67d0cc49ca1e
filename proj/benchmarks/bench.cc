#include <benchmark/benchmark.h>

#include "mfregret/sim.h"

namespace mfregret {
namespace {

void BM_StandardDare(benchmark::State& state) {
  const StateSpacePlant di = double_integrator();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_dare_standard(di.A, di.Bu, di.Q, Mat::Identity(1, 1)).P);
  }
}
BENCHMARK(BM_StandardDare);

// The pathlength synthetic plant is marginal at DC, so this exercises the
// doubling fallback.
void BM_PathlengthFeasibility(benchmark::State& state) {
  const StateSpacePlant di = double_integrator();
  for (auto _ : state) {
    benchmark::DoNotOptimize(regret_feasible(di, RegretMode::kPathlength, 8.0).feasible);
  }
}
BENCHMARK(BM_PathlengthFeasibility)->Unit(benchmark::kMillisecond);

void BM_OptimalRegret(benchmark::State& state) {
  const StateSpacePlant di = double_integrator();
  const auto mode = static_cast<RegretMode>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_regret(di, mode).gamma);
  }
}
BENCHMARK(BM_OptimalRegret)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HinfOptimal(benchmark::State& state) {
  const HinfSystem sys = to_hinf_system(double_integrator());
  for (auto _ : state) {
    benchmark::DoNotOptimize(hinf_optimal(sys).gamma);
  }
}
BENCHMARK(BM_HinfOptimal)->Unit(benchmark::kMillisecond);

void BM_Rollout(benchmark::State& state) {
  const StateSpacePlant di = double_integrator();
  const LinearController K = synthesize_regret_controller(di, RegretMode::kPathlength, 8.0);
  const int T = static_cast<int>(state.range(0));
  DisturbanceSpec spec;
  spec.seed = 1;
  const Mat w = generate_disturbance(spec, T, 1);
  const Mat v = generate_disturbance(spec, T, 2, StreamRole::kMeasurement);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rollout(di, K, w, v).total_cost);
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_Rollout)->Arg(1000)->Arg(10000);

void BM_NoncausalSolve(benchmark::State& state) {
  const StateSpacePlant di = double_integrator();
  const int T = static_cast<int>(state.range(0));
  const NoncausalSolver solver(di, Horizon(T));
  DisturbanceSpec spec;
  const Mat w = generate_disturbance(spec, T, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(w).cost);
  }
}
BENCHMARK(BM_NoncausalSolve)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace mfregret

BENCHMARK_MAIN();
