#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treerank/graph.hpp"

namespace treerank {

/// |N(u) xor N(v)| over open neighbourhoods. Throws if u == v.
int symdiff(const Graph& g, Vertex u, Vertex v);

/// NT_k(G) together with its connected components.
struct NearTwinView {
  int k = 0;
  Graph nt_graph;
  /// Components sorted by smallest member, members in id order.
  std::vector<VertexSet> components;
  /// component_of[v] indexes `components`.
  std::vector<int> component_of;
};

NearTwinView neartwin_view(const Graph& g, int k);

/// Components of NT_k(G) without materialising NT_k(G). Pairs without a
/// common neighbour are near-twins iff their degrees sum to at most k,
/// and all such vertices are joined through a minimum-degree vertex, so
/// the work is O(sum of squared degrees).
std::vector<VertexSet> neartwin_components(const Graph& g, int k);

/// g(c, k, 1) = c; g(c, k, t) = g(c, k, t-1) * (t-1) + k + c.
/// Throws std::overflow_error past 64 bits.
std::uint64_t g_bound(std::uint64_t c, std::uint64_t k, int t);

/// h(k, t) = 2 * g(t+1, k, t).
std::uint64_t h_bound(std::uint64_t k, int t);

/// Semi-induced half-graph: u[i] ~ w[j] iff i <= j.
struct HalfgraphWitness {
  std::vector<Vertex> u;
  std::vector<Vertex> w;
  bool operator==(const HalfgraphWitness&) const = default;
};

/// Description of the first defect, or nullopt if `h` is a valid
/// semi-induced half-graph of order h.u.size().
std::optional<std::string> validate_halfgraph(const Graph& g, const HalfgraphWitness& h);

struct HalfgraphCaps {
  std::size_t max_vertices = 512;
  std::uint64_t max_nodes = 50'000'000;
};

/// Backtracking search placing u_1, w_1, u_2, w_2, ... with candidates in
/// degree-descending order. Throws ScaleExceeded past the caps.
std::optional<HalfgraphWitness> find_halfgraph(const Graph& g, int t, const HalfgraphCaps& caps = {});

struct ChainFailure {
  /// 0: precondition (input or mid-recursion split), 1..3: the chain
  /// property that failed, 4: the assembled half-graph is invalid.
  int property = 0;
  std::string message;
};

/// Audit trail of the constructive half-graph extraction along a path in
/// NT_k(G). On success `witness` is set; otherwise `failure` is.
struct HalfgraphExtraction {
  VertexSet s;
  std::vector<Vertex> w;
  std::vector<VertexSet> x;
  std::vector<Vertex> u;
  std::optional<HalfgraphWitness> witness;
  std::optional<ChainFailure> failure;

  bool ok() const { return witness.has_value(); }
};

/// Checks, for i = 1..t: X_i within N(w_i) and S; X_{i-1} within X_i;
/// |X_i| >= sum_{j<i} |X_i and N(w_j)| + c. Also requires distinct w.
std::optional<ChainFailure> validate_chain(const Graph& g, const VertexSet& s, const std::vector<Vertex>& w,
                                           const std::vector<VertexSet>& x, std::uint64_t c);

/// Runs the chain construction on path v_1..v_m with S = N(v_m) \ N(v_1):
/// w_t = v_m, X_t = S, then recurse on v_1..v_q with S' = S and N(v_q),
/// q the first index with |S and N(v_q)| >= g(c, k, t-1). Afterwards
/// u_i is the smallest vertex of X_i outside N(w_1..w_{i-1}) and outside
/// {w_1..w_t}. Requires c >= t + 1 and |S| >= g(c, k, t).
HalfgraphExtraction extract_halfgraph(const Graph& g, const std::vector<Vertex>& path, int k, int t,
                                      std::uint64_t c);

/// Shortest path from u to v in view.nt_graph, or empty if none.
std::vector<Vertex> nt_path(const NearTwinView& view, Vertex u, Vertex v);

/// For a same-component pair that is not h(k, t)-near-twins: orients the
/// connecting NT path so that |N(end) \ N(start)| >= g(t+1, k, t) and runs
/// extract_halfgraph with c = t + 1.
HalfgraphExtraction halfgraph_from_pair(const Graph& g, const NearTwinView& view, Vertex u, Vertex v, int t);

}  // namespace treerank
