#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "treerank/graph.hpp"

namespace treerank {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// N_r[v]: vertices reachable from v by a path with at most r edges,
/// including v itself.
VertexSet closed_ball(const Graph& g, Vertex v, int radius);

/// BFS distances from v; kUnreachable for other components.
std::vector<int> distances_from(const Graph& g, Vertex v);

/// Complements adjacency between A and B (u != v). A and B must be
/// disjoint or equal; throws std::invalid_argument otherwise.
Graph flip(const Graph& g, const VertexSet& a, const VertexSet& b);

/// The partition F_S: every s in S is its own class (in id order), then
/// the remaining vertices grouped by their neighbourhood in S, classes
/// ordered by smallest member.
std::vector<VertexSet> sflip_classes(const Graph& g, const VertexSet& s);

/// Pair of F_S class indices (i <= j); i == j flips inside a class.
using ClassPair = std::pair<int, int>;

/// Applies the flips named in `flips` between F_S classes. Throws
/// std::invalid_argument on a class index out of range.
Graph s_flip(const Graph& g, const VertexSet& s, const std::vector<ClassPair>& flips);

struct InducedSubgraph {
  Graph graph;
  /// original[i] is the id in the parent graph of new vertex i.
  std::vector<Vertex> original;
};

/// G[X] with ids remapped densely in increasing order; predicates are
/// restricted and remapped.
InducedSubgraph induced(const Graph& g, const VertexSet& keep);

/// G - X.
InducedSubgraph delete_vertices(const Graph& g, const VertexSet& removed);

/// pi(G): vertex v becomes perm[v].
Graph permute(const Graph& g, const std::vector<Vertex>& perm);

}  // namespace treerank
