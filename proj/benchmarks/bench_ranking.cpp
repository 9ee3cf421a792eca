#include <benchmark/benchmark.h>

#include "treerank/generators.hpp"
#include "treerank/ranking.hpp"
#include "treerank/shallow_minor.hpp"

namespace {

using namespace treerank;

void BM_RankingSparseRandom(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Graph g = gen_random(n, 3.0 / n, 3000);
  for (auto _ : state) {
    auto ra = compute_ranking(g, 2, 3);
    benchmark::DoNotOptimize(ra.rank.data());
    state.counters["rounds"] = ra.stats.rounds;
    state.counters["max_expansions"] = static_cast<double>(ra.stats.max_expansions);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RankingSparseRandom)->RangeMultiplier(2)->Range(250, 4000)->Complexity()->Unit(benchmark::kMillisecond);

void BM_SeparatorSearch(benchmark::State& state) {
  const Graph g = gen_random(400, 0.02, 11);
  VertexSet targets;
  for (Vertex v = 200; v < 400; ++v) targets.push_back(v);
  const auto m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto res = separator_search(g, 0, targets, 3, m);
    benchmark::DoNotOptimize(res.expansions);
  }
}
BENCHMARK(BM_SeparatorSearch)->DenseRange(1, 4);

void BM_ExtractShallowTree(benchmark::State& state) {
  const int m = 2, r = 1, d = 2;
  const auto mp = static_cast<int>(m_prime(d, r, m));
  const Graph g = gen_tree(2, mp + 1);
  const auto ra = compute_ranking(g, r, mp);
  for (auto _ : state) {
    auto e = extract_shallow_tree(g, ra, 0, d, m, r);
    benchmark::DoNotOptimize(e.principal.data());
  }
}
BENCHMARK(BM_ExtractShallowTree);

}  // namespace
