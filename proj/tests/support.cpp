#include "support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "treerank/generators.hpp"

namespace treerank::testing {

Graph random_graph(std::mt19937_64& rng, int n_min, int n_max, double p_min, double p_max) {
  const int n = std::uniform_int_distribution<int>(n_min, n_max)(rng);
  const double p = std::uniform_real_distribution<double>(p_min, p_max)(rng);
  return gen_random(n, p, rng());
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  const auto shift = static_cast<Vertex>(a.num_vertices());
  GraphBuilder builder(a);
  for (std::size_t i = 0; i < b.num_vertices(); ++i) builder.add_vertex();
  for (const auto& [u, v] : b.edges()) builder.add_edge(u + shift, v + shift);
  return std::move(builder).build();
}

Graph blow_up(const Graph& h, int size, bool cliques) {
  const auto n = h.num_vertices();
  GraphBuilder builder(n * static_cast<std::size_t>(size));
  auto copy = [&](std::size_t v, int i) { return static_cast<Vertex>(v * static_cast<std::size_t>(size) + i); };
  for (std::size_t v = 0; v < n; ++v) {
    if (!cliques) continue;
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) builder.add_edge(copy(v, i), copy(v, j));
    }
  }
  for (const auto& [u, v] : h.edges()) {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        builder.add_edge(copy(static_cast<std::size_t>(u), i), copy(static_cast<std::size_t>(v), j));
      }
    }
  }
  return std::move(builder).build();
}

std::vector<NamedGraph> structured_corpus(int max_n) {
  std::vector<NamedGraph> out;
  auto add = [&](std::string name, Graph g) {
    if (static_cast<int>(g.num_vertices()) <= max_n) out.push_back({std::move(name), std::move(g)});
  };
  for (int n = 1; n <= std::min(max_n, 40); n += (n < 12 ? 1 : 7)) add("K" + std::to_string(n), gen_complete(n));
  for (int n = 1; 2 * n <= max_n && n <= 30; n += (n < 10 ? 1 : 5)) {
    add("K" + std::to_string(n) + "," + std::to_string(n), gen_complete_bipartite(n, n));
    add("K" + std::to_string(n) + "," + std::to_string(n + 3), gen_complete_bipartite(n, n + 3));
  }
  for (int n = 3; n <= max_n; n += (n < 12 ? 1 : 17)) add("C" + std::to_string(n), gen_cycle(n));
  for (int n = 1; n <= max_n; n += 9) add("P" + std::to_string(n), gen_path(n));
  for (int d = 0; d <= 4; ++d) {
    for (int m = 1; m <= 4; ++m) add("T" + std::to_string(d) + "," + std::to_string(m), gen_tree(d, m));
  }
  for (int s = 1; s <= max_n; s += 6) add("star" + std::to_string(s), gen_star(s));
  for (int t = 1; 2 * t <= max_n && t <= 20; ++t) add("H" + std::to_string(t), gen_halfgraph(t));
  for (int size = 2; size <= 8; size += 3) {
    add("blowC5x" + std::to_string(size), blow_up(gen_cycle(5), size, false));
    add("blowP4x" + std::to_string(size) + "c", blow_up(gen_path(4), size, true));
    add("blowT2x" + std::to_string(size), blow_up(gen_tree(1, 2), size, false));
  }
  add("K7,7+C10", disjoint_union(gen_complete_bipartite(7, 7), gen_cycle(10)));
  add("K11+H4", disjoint_union(gen_complete(11), gen_halfgraph(4)));
  return out;
}

std::vector<int> bfs(const Graph& g, Vertex s, const std::vector<char>& removed) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::deque<Vertex> queue{s};
  dist[static_cast<std::size_t>(s)] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (removed[static_cast<std::size_t>(w)] || dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

namespace {

// Calls visit on every subset of `pool` with at most `budget` elements;
// stops early when visit returns true.
bool for_each_subset(const std::vector<Vertex>& pool, int budget, const std::function<bool(const VertexSet&)>& visit) {
  VertexSet current;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (visit(current)) return true;
    if (static_cast<int>(current.size()) == budget) return false;
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      if (rec(i + 1)) return true;
      current.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

std::optional<VertexSet> brute_separator(const Graph& g, Vertex v, const VertexSet& targets, int r, int m) {
  std::vector<Vertex> pool;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (static_cast<Vertex>(u) != v) pool.push_back(static_cast<Vertex>(u));
  }
  std::optional<VertexSet> found;
  for_each_subset(pool, m, [&](const VertexSet& s) {
    std::vector<char> removed(g.num_vertices(), 0);
    for (Vertex x : s) removed[static_cast<std::size_t>(x)] = 1;
    const auto dist = bfs(g, v, removed);
    const bool ok = std::none_of(targets.begin(), targets.end(), [&](Vertex t) {
      const int d = dist[static_cast<std::size_t>(t)];
      return d >= 0 && d <= r;
    });
    if (ok) found = s;
    return ok;
  });
  return found;
}

std::vector<Rank> declarative_ranks(const Graph& g, int r, int m) {
  const auto n = g.num_vertices();
  // memo[v][k]: -1 unknown, 0 false, 1 true for "rank(v) <= k"
  std::vector<std::vector<int>> memo(n, std::vector<int>(n + 1, -1));
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::function<bool(Vertex, std::size_t)> at_most = [&](Vertex v, std::size_t k) -> bool {
    if (k == 0) return false;
    int& slot = memo[static_cast<std::size_t>(v)][k];
    if (slot >= 0) return slot == 1;
    std::vector<Vertex> pool;
    for (Vertex u : all) {
      if (u != v) pool.push_back(u);
    }
    const bool result = for_each_subset(pool, m, [&](const VertexSet& s) {
      std::vector<char> removed(n, 0);
      for (Vertex x : s) removed[static_cast<std::size_t>(x)] = 1;
      const auto dist = bfs(g, v, removed);
      for (Vertex u : all) {
        const int d = dist[static_cast<std::size_t>(u)];
        if (u == v || d < 0 || d > r) continue;
        if (!at_most(u, k - 1)) return false;
      }
      return true;
    });
    slot = result ? 1 : 0;
    return result;
  };
  std::vector<Rank> out(n, Rank::infinity());
  for (Vertex v : all) {
    for (std::size_t k = 1; k <= n; ++k) {
      if (at_most(v, k)) {
        out[static_cast<std::size_t>(v)] = Rank(static_cast<std::uint32_t>(k));
        break;
      }
    }
  }
  return out;
}

int scol_factorial(const Graph& g, int r) {
  const auto n = g.num_vertices();
  if (n == 0) return 0;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  int best = static_cast<int>(n) + 1;
  do {
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[i])] = i;
    int worst = 0;
    for (std::size_t v = 0; v < n && worst < best; ++v) {
      // BFS through vertices placed before v; count reached vertices placed at or after v
      std::vector<int> dist(n, -1);
      std::deque<Vertex> queue{static_cast<Vertex>(v)};
      dist[v] = 0;
      int count = 0;
      while (!queue.empty()) {
        const Vertex u = queue.front();
        queue.pop_front();
        if (pos[static_cast<std::size_t>(u)] >= pos[v]) ++count;
        if (u != static_cast<Vertex>(v) && pos[static_cast<std::size_t>(u)] > pos[v]) continue;
        if (dist[static_cast<std::size_t>(u)] == r) continue;
        for (Vertex w : g.neighbors(u)) {
          if (dist[static_cast<std::size_t>(w)] >= 0) continue;
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(w);
        }
      }
      worst = std::max(worst, count);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

int symdiff_sets(const Graph& g, Vertex u, Vertex v) {
  const auto a = g.neighbors(u);
  const auto b = g.neighbors(v);
  std::vector<Vertex> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return static_cast<int>(out.size());
}

std::size_t max_non_twin_set(const Graph& g, int k) {
  const auto n = g.num_vertices();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      if (!((mask >> u) & 1u)) continue;
      for (std::size_t v = u + 1; v < n && ok; ++v) {
        if ((mask >> v) & 1u) ok = symdiff_sets(g, static_cast<Vertex>(u), static_cast<Vertex>(v)) > k;
      }
    }
    if (ok) best = size;
  }
  return best;
}

bool has_biclique(const Graph& g, int s) {
  if (s <= 0) return true;
  std::vector<Vertex> pool;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(static_cast<Vertex>(v)) >= static_cast<std::size_t>(s)) pool.push_back(static_cast<Vertex>(v));
  }
  return for_each_subset(pool, s, [&](const VertexSet& side) {
    if (static_cast<int>(side.size()) != s) return false;
    std::vector<Vertex> common(g.neighbors(side[0]).begin(), g.neighbors(side[0]).end());
    for (std::size_t i = 1; i < side.size() && static_cast<int>(common.size()) >= s; ++i) {
      std::vector<Vertex> next;
      const auto nb = g.neighbors(side[i]);
      std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(), std::back_inserter(next));
      common = std::move(next);
    }
    return static_cast<int>(common.size()) >= s;
  });
}

bool has_halfgraph_brute(const Graph& g, int t) {
  const auto n = static_cast<int>(g.num_vertices());
  if (2 * t > n) return false;
  std::vector<Vertex> pick;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  // pick = u_1..u_t, w_1..w_t
  std::function<bool()> rec = [&]() {
    if (static_cast<int>(pick.size()) == 2 * t) {
      for (int i = 0; i < t; ++i) {
        for (int j = 0; j < t; ++j) {
          if (g.adjacent(pick[static_cast<std::size_t>(i)], pick[static_cast<std::size_t>(t + j)]) != (i <= j)) {
            return false;
          }
        }
      }
      return true;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      pick.push_back(v);
      const bool hit = rec();
      pick.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
      if (hit) return true;
    }
    return false;
  };
  return rec();
}

}  // namespace treerank::testing
