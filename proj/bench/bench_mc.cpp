// Serial reference vs the OpenMP kernel for mc_expected_cost.

#include <cmath>

#include <benchmark/benchmark.h>

#include "vegas/engine.hpp"

using namespace vegas;

namespace {

struct Workload {
  Process process;
  Schedule schedule;
};

Workload workload(int which) {
  switch (which) {
    case 0:
      return {Process::sampler({two_point(4.0), RuntimeLaw::deterministic}), universal_schedule()};
    case 1:
      return {Process::sampler({DistX::adversarial_density(5.0), RuntimeLaw::geometric}), luby_schedule(1.0)};
    default:
      return {geometric_coin_process(DistX::constant(std::log(2.0))), single_threshold_schedule(std::log(3.0))};
  }
}

void BM_Serial(benchmark::State& state) {
  const Workload w = workload(static_cast<int>(state.range(0)));
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_expected_cost_serial(w.process, w.schedule, trials, 42).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(w.process.label() + " / " + w.schedule.label());
}

void BM_Parallel(benchmark::State& state) {
  const Workload w = workload(static_cast<int>(state.range(0)));
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  MCOptions opt;
  opt.workers = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_expected_cost(w.process, w.schedule, trials, 42, opt).mean);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(w.process.label() + " / " + w.schedule.label());
}

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{0, 1, 2}, {100'000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1, 2}, {100'000}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
