#include "treerank/graph.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "treerank/errors.hpp"

namespace treerank {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kMissingHeader: return "missing header";
    case ParseErrorKind::kDuplicateHeader: return "duplicate header";
    case ParseErrorKind::kMalformedLine: return "malformed line";
    case ParseErrorKind::kUnknownDirective: return "unknown directive";
    case ParseErrorKind::kVertexOutOfRange: return "vertex out of range";
    case ParseErrorKind::kDuplicateEdge: return "duplicate edge";
    case ParseErrorKind::kSelfLoop: return "self-loop";
    case ParseErrorKind::kEdgeCountMismatch: return "edge count mismatch";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + to_string(kind) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

VertexSet make_vertex_set(std::vector<Vertex> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool contains(const VertexSet& set, Vertex v) { return std::binary_search(set.begin(), set.end(), v); }

Graph::Graph(std::size_t n) : adj_(n) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges, PredicateMap predicates) {
  GraphBuilder builder(n);
  for (const auto& [u, v] : edges) {
    if (!builder.add_edge(u, v)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
  }
  for (auto& [name, members] : predicates) builder.set_predicate(name, std::move(members));
  *this = std::move(builder).build();
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  const auto& b = adj_[static_cast<std::size_t>(v)];
  // search the shorter list
  return a.size() <= b.size() ? std::binary_search(a.begin(), a.end(), v)
                              : std::binary_search(b.begin(), b.end(), u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u) {
    for (Vertex v : adj_[u]) {
      if (static_cast<std::size_t>(v) > u) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

const VertexSet& Graph::predicate(std::string_view name) const {
  static const VertexSet kEmpty;
  auto it = predicates_.find(name);
  return it == predicates_.end() ? kEmpty : it->second;
}

bool Graph::has_label(std::string_view name, Vertex v) const { return contains(predicate(name), v); }

Graph Graph::with_predicate(std::string name, VertexSet members) const {
  GraphBuilder builder(*this);
  builder.set_predicate(std::move(name), std::move(members));
  return std::move(builder).build();
}

GraphBuilder::GraphBuilder(std::size_t n) : adj_(n) {}

GraphBuilder::GraphBuilder(const Graph& g) : adj_(g.adj_), predicates_(g.predicates_) {}

Vertex GraphBuilder::add_vertex() {
  adj_.emplace_back();
  return static_cast<Vertex>(adj_.size() - 1);
}

void GraphBuilder::check(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= adj_.size()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " out of range");
  }
}

bool GraphBuilder::add_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  if (u == v) throw std::invalid_argument("self-loop at " + std::to_string(u));
  auto& nu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adj_[static_cast<std::size_t>(v)];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  return true;
}

bool GraphBuilder::remove_edge(Vertex u, Vertex v) {
  check(u);
  check(v);
  auto& nu = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adj_[static_cast<std::size_t>(v)];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  return true;
}

bool GraphBuilder::has_edge(Vertex u, Vertex v) const {
  check(u);
  check(v);
  const auto& nu = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nu.begin(), nu.end(), v);
}

namespace {

// nbrs := nbrs xor (targets \ {self})
void toggle_list(std::vector<Vertex>& nbrs, const VertexSet& targets, Vertex self) {
  std::vector<Vertex> out;
  out.reserve(nbrs.size() + targets.size());
  auto a = nbrs.begin();
  auto b = targets.begin();
  while (a != nbrs.end() || b != targets.end()) {
    if (b != targets.end() && *b == self) {
      ++b;
      continue;
    }
    if (b == targets.end() || (a != nbrs.end() && *a < *b)) {
      out.push_back(*a++);
    } else if (a == nbrs.end() || *b < *a) {
      out.push_back(*b++);
    } else {
      ++a;
      ++b;
    }
  }
  nbrs = std::move(out);
}

}  // namespace

void GraphBuilder::toggle_between(const VertexSet& a, const VertexSet& b) {
  for (Vertex v : a) check(v);
  for (Vertex v : b) check(v);
  if (a == b) {
    for (Vertex u : a) toggle_list(adj_[static_cast<std::size_t>(u)], a, u);
    return;
  }
  std::vector<Vertex> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw std::invalid_argument("flip sets must be disjoint or equal");
  for (Vertex u : a) toggle_list(adj_[static_cast<std::size_t>(u)], b, u);
  for (Vertex u : b) toggle_list(adj_[static_cast<std::size_t>(u)], a, u);
}

void GraphBuilder::set_predicate(std::string name, VertexSet members) {
  members = make_vertex_set(std::move(members));
  for (Vertex v : members) check(v);
  if (members.empty()) {
    predicates_.erase(name);
  } else {
    predicates_[std::move(name)] = std::move(members);
  }
}

void GraphBuilder::add_label(const std::string& name, Vertex v) {
  check(v);
  auto& members = predicates_[name];
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) members.insert(it, v);
}

Graph GraphBuilder::build() && {
  Graph g;
  std::size_t twice = 0;
  for (const auto& nbrs : adj_) twice += nbrs.size();
  g.adj_ = std::move(adj_);
  g.num_edges_ = twice / 2;
  std::erase_if(predicates_, [](const auto& kv) { return kv.second.empty(); });
  g.predicates_ = std::move(predicates_);
  adj_.clear();
  predicates_.clear();
  return g;
}

}  // namespace treerank
