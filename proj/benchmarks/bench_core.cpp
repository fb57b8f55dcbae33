#include <benchmark/benchmark.h>

#include "lincyc/generators.hpp"
#include "lincyc/io.hpp"
#include "lincyc/mert.hpp"
#include "lincyc/oracle.hpp"
#include "lincyc/reductions.hpp"

using namespace lincyc;

static void BM_GreedyPacking(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(greedy_partial_steiner(n, 3, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GreedyPacking)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Sparsify(benchmark::State& state) {
  auto base = greedy_partial_steiner(static_cast<std::size_t>(state.range(0)), 3, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(high_girth_sparsify(base, 4.0, 3, seed++));
}
BENCHMARK(BM_Sparsify)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

static void BM_BfsLayers(benchmark::State& state) {
  auto g = greedy_partial_steiner(static_cast<std::size_t>(state.range(0)), 3, 1);
  Vertex x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bfs_layers(g, x));
    x = (x + 1) % static_cast<Vertex>(g.universe());
  }
}
BENCHMARK(BM_BfsLayers)->Arg(256)->Arg(1024);

static void BM_PartiteReduction(benchmark::State& state) {
  auto g = random_linear(2000, static_cast<std::size_t>(state.range(0)), 6.0, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(r_partite_reduction(g, seed++));
}
BENCHMARK(BM_PartiteReduction)->DenseRange(3, 5);

static void BM_BuildMert(benchmark::State& state) {
  auto red = r_partite_reduction(random_linear(static_cast<std::size_t>(state.range(0)), 3, 8.0, 2), 2);
  Vertex root = 0;
  for (Vertex v : red.graph.vertices())
    if (red.partition.part_of(v) == 0 && red.graph.degree(v) > 0) {
      root = v;
      break;
    }
  for (auto _ : state) benchmark::DoNotOptimize(build_mert(red.graph, red.partition, root));
}
BENCHMARK(BM_BuildMert)->Arg(500)->Arg(4000);

static void BM_Spectrum(benchmark::State& state) {
  auto g = random_linear(60, 3, 3.0, 3);
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cycles(g, len));
}
BENCHMARK(BM_Spectrum)->DenseRange(4, 8, 2);

static void BM_TextRoundTrip(benchmark::State& state) {
  auto g = greedy_partial_steiner(static_cast<std::size_t>(state.range(0)), 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(parse_text(to_text(g)));
}
BENCHMARK(BM_TextRoundTrip)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
