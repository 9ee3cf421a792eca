#include "treerank/generators.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace treerank {

Graph gen_tree(int depth, int branching) {
  if (depth < 0 || branching < 1) throw std::invalid_argument("gen_tree requires depth >= 0 and branching >= 1");
  std::size_t total = 1;
  std::size_t level = 1;
  for (int i = 0; i < depth; ++i) {
    level *= static_cast<std::size_t>(branching);
    total += level;
  }
  GraphBuilder builder(total);
  const std::size_t internal = total - level;  // vertices above the leaf level
  for (std::size_t v = 0; v < internal; ++v) {
    for (int c = 1; c <= branching; ++c) {
      builder.add_edge(static_cast<Vertex>(v), static_cast<Vertex>(v * branching + c));
    }
  }
  return std::move(builder).build();
}

Graph subdivide(const Graph& g, std::span<const int> counts) {
  const auto edges = g.edges();
  if (counts.size() != edges.size()) throw std::invalid_argument("subdivide: one count per edge required");
  GraphBuilder builder(g.num_vertices());
  for (const auto& [name, members] : g.predicates()) builder.set_predicate(name, members);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (counts[i] < 0) throw std::invalid_argument("subdivide: negative count");
    Vertex prev = edges[i].first;
    for (int k = 0; k < counts[i]; ++k) {
      Vertex fresh = builder.add_vertex();
      builder.add_edge(prev, fresh);
      prev = fresh;
    }
    builder.add_edge(prev, edges[i].second);
  }
  return std::move(builder).build();
}

Graph subdivide_uniform(const Graph& g, int count) {
  std::vector<int> counts(g.num_edges(), count);
  return subdivide(g, counts);
}

Graph gen_halfgraph(int order) {
  if (order < 1) throw std::invalid_argument("gen_halfgraph requires order >= 1");
  GraphBuilder builder(2 * static_cast<std::size_t>(order));
  VertexSet us, ws;
  for (int i = 0; i < order; ++i) {
    us.push_back(i);
    ws.push_back(order + i);
    for (int j = i; j < order; ++j) builder.add_edge(i, order + j);
  }
  builder.set_predicate("U", us);
  builder.set_predicate("W", ws);
  return std::move(builder).build();
}

Graph gen_random(int n, double edge_probability, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gen_random requires n >= 0");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double x = static_cast<double>(rng() >> 11) * kScale;
      if (x < edge_probability) edges.emplace_back(u, v);
    }
  }
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph gen_path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("gen_cycle requires n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, n - 1);
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph gen_complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph gen_complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) edges.emplace_back(u, a + v);
  return Graph(static_cast<std::size_t>(a + b), edges);
}

Graph gen_star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(static_cast<std::size_t>(leaves + 1), edges);
}

}  // namespace treerank
