// Serial reference against the OpenMP paths: whole-sweep execution and
// per-flow arrival generation. Pass --benchmark_counters_tabular=true for a
// compact table.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "wimax/scenario_file.hpp"
#include "wimax/scenarios.hpp"
#include "wimax/traffic.hpp"

using namespace wimax;

namespace {

const Scenario& shipped() {
  static const Scenario s = load_scenario(std::string(WIMAX_SCENARIO_DIR) + "/default.ini");
  return s;
}

// Heavier load than the shipped mix so generation dominates: 400 stations.
std::vector<traffic::ServiceFlow> many_flows() {
  traffic::FlowLayout layout;
  layout.stations_per_class = {80, 80, 80, 80, 80};
  return traffic::build_flows(layout, 2012);
}

void BM_SweepSerial(benchmark::State& state) {
  const auto sweep = shipped().sweep(scenarios::SweepName::QueueSize);
  for (auto _ : state) benchmark::DoNotOptimize(scenarios::run_sweep_serial(sweep));
  state.SetItemsProcessed(state.iterations() * 18);
}

void BM_SweepParallel(benchmark::State& state) {
  const auto sweep = shipped().sweep(scenarios::SweepName::QueueSize);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scenarios::run_sweep(sweep, jobs));
  state.SetItemsProcessed(state.iterations() * 18);
  state.counters["threads"] = jobs;
}

void BM_GenerateSerial(benchmark::State& state) {
  const auto flows = many_flows();
  std::size_t n = 0;
  for (auto _ : state) {
    auto as = traffic::generate_all_serial(flows, 30.0);
    n = as.size();
    benchmark::DoNotOptimize(as);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

void BM_GenerateParallel(benchmark::State& state) {
  const auto flows = many_flows();
  omp_set_num_threads(static_cast<int>(state.range(0)));
  std::size_t n = 0;
  for (auto _ : state) {
    auto as = traffic::generate_all(flows, 30.0);
    n = as.size();
    benchmark::DoNotOptimize(as);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.counters["threads"] = static_cast<double>(state.range(0));
}

const int kMaxThreads = omp_get_num_procs();

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->DenseRange(1, kMaxThreads > 1 ? kMaxThreads : 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateParallel)->DenseRange(1, kMaxThreads > 1 ? kMaxThreads : 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
