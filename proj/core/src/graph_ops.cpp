#include "treerank/graph_ops.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace treerank {

VertexSet closed_ball(const Graph& g, Vertex v, int radius) {
  if (!g.valid(v)) throw std::invalid_argument("closed_ball: vertex out of range");
  if (radius < 0) throw std::invalid_argument("closed_ball: negative radius");
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<Vertex> frontier{v};
  VertexSet ball{v};
  dist[static_cast<std::size_t>(v)] = 0;
  for (int level = 0; level < radius && !frontier.empty(); ++level) {
    std::vector<Vertex> next;
    for (Vertex u : frontier) {
      for (Vertex w : g.neighbors(u)) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = level + 1;
          next.push_back(w);
          ball.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

std::vector<int> distances_from(const Graph& g, Vertex v) {
  std::vector<int> dist(g.num_vertices(), kUnreachable);
  std::vector<Vertex> queue{v};
  dist[static_cast<std::size_t>(v)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
        dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Graph flip(const Graph& g, const VertexSet& a, const VertexSet& b) {
  GraphBuilder builder(g);
  builder.toggle_between(a, b);
  return std::move(builder).build();
}

std::vector<VertexSet> sflip_classes(const Graph& g, const VertexSet& s) {
  for (Vertex v : s) {
    if (!g.valid(v)) throw std::invalid_argument("sflip_classes: vertex out of range");
  }
  std::vector<VertexSet> classes;
  for (Vertex v : s) classes.push_back({v});
  // keyed by the neighbourhood inside S
  std::map<VertexSet, VertexSet> by_signature;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Vertex u = static_cast<Vertex>(v);
    if (contains(s, u)) continue;
    VertexSet signature;
    for (Vertex w : s) {
      if (g.adjacent(u, w)) signature.push_back(w);
    }
    by_signature[signature].push_back(u);
  }
  std::vector<VertexSet> rest;
  for (auto& [sig, members] : by_signature) rest.push_back(std::move(members));
  std::sort(rest.begin(), rest.end(), [](const VertexSet& x, const VertexSet& y) { return x.front() < y.front(); });
  for (auto& c : rest) classes.push_back(std::move(c));
  return classes;
}

Graph s_flip(const Graph& g, const VertexSet& s, const std::vector<ClassPair>& flips) {
  const auto classes = sflip_classes(g, s);
  GraphBuilder builder(g);
  const int count = static_cast<int>(classes.size());
  for (const auto& [i, j] : flips) {
    if (i < 0 || j < 0 || i >= count || j >= count) {
      throw std::invalid_argument("s_flip: class index out of range (" + std::to_string(i) + ", " +
                                  std::to_string(j) + "), " + std::to_string(count) + " classes");
    }
    builder.toggle_between(classes[static_cast<std::size_t>(i)], classes[static_cast<std::size_t>(j)]);
  }
  return std::move(builder).build();
}

InducedSubgraph induced(const Graph& g, const VertexSet& keep) {
  std::vector<Vertex> index(g.num_vertices(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (!g.valid(keep[i])) throw std::invalid_argument("induced: vertex out of range");
    index[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
  }
  GraphBuilder builder(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (Vertex w : g.neighbors(keep[i])) {
      const Vertex j = index[static_cast<std::size_t>(w)];
      if (j > static_cast<Vertex>(i)) builder.add_edge(static_cast<Vertex>(i), j);
    }
  }
  for (const auto& [name, members] : g.predicates()) {
    VertexSet mapped;
    for (Vertex v : members) {
      if (index[static_cast<std::size_t>(v)] >= 0) mapped.push_back(index[static_cast<std::size_t>(v)]);
    }
    builder.set_predicate(name, std::move(mapped));
  }
  return {std::move(builder).build(), keep};
}

InducedSubgraph delete_vertices(const Graph& g, const VertexSet& removed) {
  VertexSet keep;
  keep.reserve(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!contains(removed, static_cast<Vertex>(v))) keep.push_back(static_cast<Vertex>(v));
  }
  return induced(g, keep);
}

Graph permute(const Graph& g, const std::vector<Vertex>& perm) {
  if (perm.size() != g.num_vertices()) throw std::invalid_argument("permute: size mismatch");
  GraphBuilder builder(g.num_vertices());
  for (const auto& [u, v] : g.edges()) {
    builder.add_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  for (const auto& [name, members] : g.predicates()) {
    VertexSet mapped;
    for (Vertex v : members) mapped.push_back(perm[static_cast<std::size_t>(v)]);
    builder.set_predicate(name, std::move(mapped));
  }
  return std::move(builder).build();
}

}  // namespace treerank
