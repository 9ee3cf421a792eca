#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "treerank/graph.hpp"

namespace treerank {

/// Extended natural number: a positive rank or infinity. Infinity compares
/// greater than every finite rank.
class Rank {
 public:
  static constexpr Rank infinity() { return Rank(kInfinite); }
  constexpr explicit Rank(std::uint32_t value) : value_(value) {}

  constexpr bool is_finite() const { return value_ != kInfinite; }
  constexpr std::uint32_t value() const { return value_; }

  constexpr auto operator<=>(const Rank&) const = default;

  /// Decimal value, or "inf".
  std::string to_string() const;

 private:
  static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t value_;
};

struct RankingParams {
  int r = 1;
  int m = 0;
  bool operator==(const RankingParams&) const = default;
};

struct SearchStats {
  std::uint64_t searches = 0;
  std::uint64_t total_expansions = 0;
  std::uint64_t max_expansions = 0;  // worst single separator search
  std::uint32_t rounds = 0;
};

/// Output of the (r, m)-ranking algorithm. witness[v] is the separator
/// found when v received its finite rank (for rank 1 it is N(v)).
struct RankAssignment {
  RankingParams params;
  std::vector<Rank> rank;
  std::vector<std::optional<VertexSet>> witness;
  SearchStats stats;

  bool all_finite() const;
  Rank max_rank() const;
};

/// Runs the round-based ranking: in round i every still-infinite vertex v
/// gets rank i iff some S, |S| <= m, v not in S, leaves only finite-rank
/// vertices in N_r^{G-S}[v] \ {v}. Rounds are strictly batched: every check
/// of round i reads the state frozen at the end of round i-1. Stops when a
/// round assigns nothing or nothing is left.
RankAssignment compute_ranking(const Graph& g, int r, int m);

struct SeparatorResult {
  std::optional<VertexSet> separator;
  std::uint64_t expansions = 0;
};

/// Branch-and-bound separator search in O(r^m * n^2): looks for S, |S| <= m,
/// v not in S, with N_r^{G-S}[v] disjoint from `targets`. Finds a shortest
/// v-to-target path by BFS, then branches on its non-v vertices in order
/// from v outward. `targets` must not contain v.
SeparatorResult separator_search(const Graph& g, Vertex v, const VertexSet& targets, int r, int m);

struct BruteforceCaps {
  std::size_t max_vertices = 12;
  int max_budget = 4;
};

/// Same decision by enumerating all subsets of V \ {v} of size <= m in
/// order of size, then lexicographically. Throws ScaleExceeded beyond caps.
std::optional<VertexSet> separator_search_bruteforce(const Graph& g, Vertex v, const VertexSet& targets, int r, int m,
                                                     const BruteforceCaps& caps = {});

/// Vertices sorted by (rank, id). Throws std::invalid_argument if some
/// rank is infinite.
std::vector<Vertex> rank_order(const RankAssignment& ra);

struct PackingCaps {
  std::size_t max_vertices = 14;
  int max_radius = 3;
};

/// Exact r-backconnectivity of v under `order` (earlier = smaller): the
/// maximum number of paths of length <= r from v to vertices w > v that
/// pairwise share only v. Exhaustive; throws ScaleExceeded beyond caps.
int backconnectivity(const Graph& g, const std::vector<Vertex>& order, Vertex v, int r, const PackingCaps& caps = {});

/// Exact scol_r(G), counting v itself as strongly reachable from v. Exact
/// minimisation over all orderings (dynamic programming over the set of
/// vertices placed before v); throws ScaleExceeded for n > max_vertices.
int scol_bruteforce(const Graph& g, int r, std::size_t max_vertices = 9);

/// Number of vertices strongly r-reachable from v under `order`,
/// including v itself.
int strongly_reachable_count(const Graph& g, const std::vector<Vertex>& order, Vertex v, int r);

}  // namespace treerank
