#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "treerank/graph.hpp"
#include "treerank/neartwin.hpp"
#include "treerank/ranking.hpp"

namespace treerank::testing {

/// G(n, p) with n and p drawn uniformly from the given ranges.
Graph random_graph(std::mt19937_64& rng, int n_min, int n_max, double p_min, double p_max);

Graph disjoint_union(const Graph& a, const Graph& b);

/// Replaces every vertex of h by `size` copies, forming a clique or an
/// independent set, and joins copies of adjacent vertices completely.
Graph blow_up(const Graph& h, int size, bool cliques);

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Cliques, complete bipartite graphs, cycles, paths, trees, stars,
/// half-graphs and blow-ups, sizes up to about `max_n`.
std::vector<NamedGraph> structured_corpus(int max_n);

// Independent oracles. None of these call the library routine they check.

std::vector<int> bfs(const Graph& g, Vertex s, const std::vector<char>& removed);

/// Exhaustive search for S, |S| <= m, v not in S, separating v from
/// `targets` within distance r.
std::optional<VertexSet> brute_separator(const Graph& g, Vertex v, const VertexSet& targets, int r, int m);

/// rank(v) = min k with "rank <= k" defined recursively: some S leaves only
/// vertices of rank <= k-1 in the r-ball of v in G - S.
std::vector<Rank> declarative_ranks(const Graph& g, int r, int m);

/// min over all n! orderings of the maximum strong r-reach, counting v.
int scol_factorial(const Graph& g, int r);

int symdiff_sets(const Graph& g, Vertex u, Vertex v);

/// Largest set of pairwise non-k-near-twins by subset enumeration.
std::size_t max_non_twin_set(const Graph& g, int k);

/// Whether g contains K_{s,s} as a (not necessarily induced) subgraph.
bool has_biclique(const Graph& g, int s);

/// Half-graph of order t by enumerating ordered vertex tuples.
bool has_halfgraph_brute(const Graph& g, int t);

}  // namespace treerank::testing
