#pragma once

#include <cstdint>
#include <span>

#include "treerank/graph.hpp"

namespace treerank {

/// T_{d,m}: rooted tree of depth d where every non-leaf has m children.
/// Vertices are numbered in BFS order, root = 0, children of vertex i are
/// m*i+1 .. m*i+m.
Graph gen_tree(int depth, int branching);

/// Replaces edge i of g.edges() (lexicographic order) by a path with
/// counts[i] fresh internal vertices. Fresh ids start at n and are handed
/// out edge by edge, along the path from the smaller endpoint.
Graph subdivide(const Graph& g, std::span<const int> counts);
Graph subdivide_uniform(const Graph& g, int count);

/// Half-graph of order t: u_1..u_t get ids 0..t-1 and predicate "U",
/// w_1..w_t get ids t..2t-1 and predicate "W"; u_i ~ w_j iff i <= j.
Graph gen_halfgraph(int order);

/// G(n, p) sampled with the "gnp-mt64-v1" scheme: one std::mt19937_64
/// draw per pair (u, v), u < v, in lexicographic order; the pair is an
/// edge iff (draw >> 11) * 2^-53 < p. std::mt19937_64's output sequence is
/// fixed by the C++ standard, so corpora are reproducible everywhere.
Graph gen_random(int n, double edge_probability, std::uint64_t seed);

Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_complete(int n);
/// Sides 0..a-1 and a..a+b-1.
Graph gen_complete_bipartite(int a, int b);
/// Centre 0, leaves 1..leaves.
Graph gen_star(int leaves);

}  // namespace treerank
