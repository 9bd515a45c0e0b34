// Serial reference vs OpenMP kernels: the all-pairs oracle sweep and the
// randomised walker trials.

#include <cstdint>
#include <memory>

#include <benchmark/benchmark.h>

#include "wayfind/map_model.hpp"
#include "wayfind/sweep.hpp"
#include "wayfind/walker_sim.hpp"

namespace {

std::shared_ptr<const wayfind::MapGraph> demo_map() {
  static const auto graph = std::make_shared<const wayfind::MapGraph>(wayfind::load_map_file(WAYFIND_DEMO_MAP));
  return graph;
}

void BM_OracleSweep(benchmark::State& state, wayfind::Execution execution) {
  const auto graph = demo_map();
  std::size_t pairs = 0;
  for (auto _ : state) {
    auto report = wayfind::oracle_sweep(*graph, execution);
    pairs = report.pairs.size();
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs));
}

void BM_WalkerTrials(benchmark::State& state, wayfind::Execution execution) {
  const auto graph = demo_map();
  for (auto _ : state) {
    auto report = wayfind::run_walker_trials(graph, 1000, 1, {}, execution);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}

}  // namespace

BENCHMARK_CAPTURE(BM_OracleSweep, serial, wayfind::Execution::serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_OracleSweep, parallel, wayfind::Execution::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_WalkerTrials, serial, wayfind::Execution::serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_WalkerTrials, parallel, wayfind::Execution::parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
