#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treerank/graph.hpp"
#include "treerank/ranking.hpp"

namespace treerank {

/// An <= r-subdivision of T_{d,m} inside a graph. Tree nodes use the
/// gen_tree layout (BFS order, children of node i are m*i+1 .. m*i+m).
/// The tree edge into node c >= 1 is identified by c; paths[c] is the
/// full vertex sequence from principal[parent(c)] to principal[c].
/// paths[0] is empty.
struct Embedding {
  int depth = 0;
  int branching = 1;
  std::vector<Vertex> principal;
  std::vector<std::vector<Vertex>> paths;

  bool operator==(const Embedding&) const = default;
};

/// Number of nodes of T_{d,m}.
std::uint64_t tree_size(int depth, int branching);

/// Independent structural check: tree shape, principals distinct, every
/// path a walk along edges with at most r internal vertices, internal
/// vertices pairwise distinct and disjoint from all principals. Returns
/// a description of the first problem, or nullopt when valid.
std::optional<std::string> validate_embedding(const Graph& g, const Embedding& e, int r);

/// W: vertex count of T_{d-1,m} with every edge subdivided r times.
/// Throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t w_count(int d, std::uint64_t m, int r);

/// M = m * W + r * m + m, the branching requested from each subtree.
std::uint64_t m_branching(int d, std::uint64_t m, int r);

/// m'(1, r, m) = m - 1; m'(d, r, m) = max(m'(d-1, r, M), r * m).
/// Throws std::overflow_error past 64 bits.
std::uint64_t m_prime(int d, int r, std::uint64_t m);

struct SearchCaps {
  std::size_t max_vertices = 64;
  std::uint64_t max_nodes = 20'000'000;  // search-tree nodes before giving up
};

/// Exhaustive search for an <= r-subdivision of T_{d,m} as a subgraph.
/// Throws ScaleExceeded past the caps.
std::optional<Embedding> contains_shallow_tree(const Graph& g, int d, int m, int r, const SearchCaps& caps = {});

/// Builds an <= r-subdivision of T_{d,m} rooted at v from a ranking with
/// parameters (r, m_prime(d, r, m)) in which v has rank > d.
///
/// At level j with branching b: collect b paths of length <= r from the
/// current root to vertices of rank >= j, one at a time, each a BFS
/// shortest path in the graph minus the earlier paths (ties to the
/// smallest endpoint id); recurse on every endpoint with branching
/// M = b * W + r * b + b; then keep, per endpoint, the first b subtrees
/// avoiding everything already used. Throws std::invalid_argument if the
/// preconditions fail (d < 1, m < 1, wrong parameters, rank too small).
Embedding extract_shallow_tree(const Graph& g, const RankAssignment& ra, Vertex v, int d, int m, int r);

}  // namespace treerank
