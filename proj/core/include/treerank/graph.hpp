#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treerank {

using Vertex = std::int32_t;

/// Sorted, duplicate-free list of vertex ids.
using VertexSet = std::vector<Vertex>;

/// Unordered edge stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

/// Sorts and deduplicates in place, returning the normalized set.
VertexSet make_vertex_set(std::vector<Vertex> ids);

bool contains(const VertexSet& set, Vertex v);

/// Finite simple undirected graph on vertices 0..n-1 with named unary
/// predicates. Values are immutable once built; every transforming
/// operation returns a new Graph.
///
/// Predicates with an empty vertex set are not stored, so a graph with an
/// empty predicate "R" compares equal to one without it.
class Graph {
 public:
  using PredicateMap = std::map<std::string, VertexSet, std::less<>>;

  Graph() = default;
  explicit Graph(std::size_t n);

  /// Throws std::invalid_argument on self-loops, out-of-range ids,
  /// duplicate edges, or predicate members outside 0..n-1.
  Graph(std::size_t n, std::span<const Edge> edges, PredicateMap predicates = {});

  std::size_t num_vertices() const { return adj_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(Vertex v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  bool adjacent(Vertex u, Vertex v) const;
  bool valid(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < adj_.size(); }

  /// All edges (u < v) in lexicographic order.
  std::vector<Edge> edges() const;

  const PredicateMap& predicates() const { return predicates_; }
  const VertexSet& predicate(std::string_view name) const;
  bool has_label(std::string_view name, Vertex v) const;

  /// Copy with predicate `name` replaced by `members` (removed if empty).
  Graph with_predicate(std::string name, VertexSet members) const;

  bool operator==(const Graph& other) const = default;

 private:
  friend class GraphBuilder;

  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
  PredicateMap predicates_;
};

/// Mutable adjacency used to assemble a Graph. Neighbour lists are kept
/// sorted, so build() is linear.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n = 0);
  explicit GraphBuilder(const Graph& g);

  std::size_t num_vertices() const { return adj_.size(); }
  Vertex add_vertex();

  /// Returns false if the edge is already present.
  bool add_edge(Vertex u, Vertex v);
  bool remove_edge(Vertex u, Vertex v);
  bool has_edge(Vertex u, Vertex v) const;

  /// Complements adjacency between every u in a and v in b with u != v.
  /// Requires a and b disjoint or equal.
  void toggle_between(const VertexSet& a, const VertexSet& b);

  void set_predicate(std::string name, VertexSet members);
  void add_label(const std::string& name, Vertex v);

  Graph build() &&;

 private:
  void check(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  Graph::PredicateMap predicates_;
};

}  // namespace treerank
