#include <benchmark/benchmark.h>

#include "treerank/generators.hpp"
#include "treerank/logic.hpp"
#include "treerank/neartwin.hpp"
#include "treerank/sparsify.hpp"

namespace {

using namespace treerank;

void BM_BuildSparsifierRandom(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Graph g = gen_random(n, 3.0 / n, 5000);
  for (auto _ : state) {
    auto sg = build_sparsifier(g, 1, 2);
    benchmark::DoNotOptimize(sg.graph.num_edges());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BuildSparsifierRandom)->RangeMultiplier(2)->Range(625, 10000)->Complexity();

void BM_SparsifyCompleteBipartite(benchmark::State& state) {
  const Graph g = gen_complete_bipartite(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sg = build_sparsifier(g, 0, 1);
    benchmark::DoNotOptimize(recover(sg).num_edges());
  }
}
BENCHMARK(BM_SparsifyCompleteBipartite)->Range(8, 256);

void BM_NearTwinView(benchmark::State& state) {
  const Graph g = gen_random(static_cast<int>(state.range(0)), 0.1, 17);
  for (auto _ : state) {
    auto view = neartwin_view(g, 2);
    benchmark::DoNotOptimize(view.components.size());
  }
}
BENCHMARK(BM_NearTwinView)->Range(64, 1024);

void BM_RecoveryInterpretation(benchmark::State& state) {
  const auto sg = build_sparsifier(gen_complete_bipartite(static_cast<int>(state.range(0)), static_cast<int>(state.range(0))), 0, 1);
  const auto interp = recovery_interpretation();
  for (auto _ : state) {
    auto out = apply_interpretation(sg.graph, interp);
    benchmark::DoNotOptimize(out.graph.num_edges());
  }
}
BENCHMARK(BM_RecoveryInterpretation)->Range(8, 32);

}  // namespace
