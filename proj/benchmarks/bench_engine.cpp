#include <benchmark/benchmark.h>

#include "lincyc/engine.hpp"
#include "lincyc/generators.hpp"

using namespace lincyc;

static EngineOptions loose() {
  EngineOptions o;
  o.best_effort = true;
  return o;
}

static void BM_FindSteiner(benchmark::State& state) {
  auto g = greedy_partial_steiner(static_cast<std::size_t>(state.range(1)), 3, 1);
  const auto mode = static_cast<EngineMode>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find(g, mode, 2, seed++, loose()));
  state.SetLabel(to_string(mode));
}
BENCHMARK(BM_FindSteiner)->ArgsProduct({{0, 1, 2}, {99, 400}})->Unit(benchmark::kMillisecond);

static void BM_FindSparsified(benchmark::State& state) {
  auto base = greedy_partial_steiner(2000, 3, 1);
  auto g = high_girth_sparsify(base, 4.0, 3, 1).graph;
  const auto mode = static_cast<EngineMode>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find(g, mode, 3, seed++, loose()));
  state.SetLabel(to_string(mode));
}
BENCHMARK(BM_FindSparsified)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_FindPlantedEven(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  auto g = plant_cycles(500, 3, {2 * k}, 2.0, 7).graph;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_c2k(g, k, seed++, loose()));
}
BENCHMARK(BM_FindPlantedEven)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
