#include "treerank/neartwin.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "treerank/errors.hpp"

namespace treerank {

int symdiff(const Graph& g, Vertex u, Vertex v) {
  if (!g.valid(u) || !g.valid(v)) throw std::invalid_argument("symdiff: vertex out of range");
  if (u == v) throw std::invalid_argument("symdiff: vertices must differ");
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<int>(a.size() + b.size() - 2 * common);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Walks u in id order; for each u fills count[x] = |N(u) and N(x)| for every
// x > u sharing a neighbour with u, calls visit(u, touched, count), then
// clears. Work is O(sum of squared degrees).
template <typename Visit>
void for_each_two_hop(const Graph& g, Visit&& visit) {
  const std::size_t n = g.num_vertices();
  std::vector<int> count(n, 0);
  std::vector<Vertex> touched;
  for (std::size_t u = 0; u < n; ++u) {
    const auto uv = static_cast<Vertex>(u);
    for (Vertex w : g.neighbors(uv)) {
      for (Vertex x : g.neighbors(w)) {
        if (x <= uv) continue;
        if (count[static_cast<std::size_t>(x)]++ == 0) touched.push_back(x);
      }
    }
    visit(uv, touched, count);
    for (Vertex x : touched) count[static_cast<std::size_t>(x)] = 0;
    touched.clear();
  }
}

int two_hop_symdiff(const Graph& g, Vertex u, Vertex x, int common) {
  return static_cast<int>(g.degree(u) + g.degree(x)) - 2 * common;
}

std::vector<VertexSet> group(DisjointSets& sets, std::size_t n) {
  std::vector<int> index(n, -1);
  std::vector<VertexSet> parts;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = sets.find(v);
    if (index[root] < 0) {
      index[root] = static_cast<int>(parts.size());
      parts.emplace_back();
    }
    parts[static_cast<std::size_t>(index[root])].push_back(static_cast<Vertex>(v));
  }
  return parts;
}

}  // namespace

std::vector<VertexSet> neartwin_components(const Graph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const std::size_t n = g.num_vertices();
  DisjointSets sets(n);
  for_each_two_hop(g, [&](Vertex u, const std::vector<Vertex>& touched, const std::vector<int>& count) {
    for (Vertex x : touched) {
      if (two_hop_symdiff(g, u, x, count[static_cast<std::size_t>(x)]) <= k) {
        sets.unite(static_cast<std::size_t>(u), static_cast<std::size_t>(x));
      }
    }
  });
  if (n > 0) {
    std::size_t low = 0;
    for (std::size_t v = 1; v < n; ++v) {
      if (g.degree(static_cast<Vertex>(v)) < g.degree(static_cast<Vertex>(low))) low = v;
    }
    const std::size_t dlow = g.degree(static_cast<Vertex>(low));
    for (std::size_t v = 0; v < n; ++v) {
      if (v != low && g.degree(static_cast<Vertex>(v)) + dlow <= static_cast<std::size_t>(k)) sets.unite(v, low);
    }
  }
  return group(sets, n);
}

NearTwinView neartwin_view(const Graph& g, int k) {
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> low;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.degree(static_cast<Vertex>(v)) <= static_cast<std::size_t>(k)) low.push_back(static_cast<Vertex>(v));
  }
  GraphBuilder builder(n);
  const auto kk = static_cast<std::size_t>(k);
  for_each_two_hop(g, [&](Vertex u, const std::vector<Vertex>& touched, const std::vector<int>& count) {
    for (Vertex x : touched) {
      if (two_hop_symdiff(g, u, x, count[static_cast<std::size_t>(x)]) <= k) builder.add_edge(u, x);
    }
    // without a common neighbour the symmetric difference is deg u + deg x
    if (g.degree(u) > kk) return;
    for (Vertex x : low) {
      if (x > u && count[static_cast<std::size_t>(x)] == 0 && g.degree(u) + g.degree(x) <= kk) builder.add_edge(u, x);
    }
  });

  NearTwinView view;
  view.k = k;
  view.nt_graph = std::move(builder).build();
  view.component_of.assign(n, -1);
  for (std::size_t s = 0; s < n; ++s) {
    if (view.component_of[s] >= 0) continue;
    const int id = static_cast<int>(view.components.size());
    VertexSet comp{static_cast<Vertex>(s)};
    view.component_of[s] = id;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (Vertex w : view.nt_graph.neighbors(comp[head])) {
        if (view.component_of[static_cast<std::size_t>(w)] < 0) {
          view.component_of[static_cast<std::size_t>(w)] = id;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    view.components.push_back(std::move(comp));
  }
  return view;
}

std::uint64_t g_bound(std::uint64_t c, std::uint64_t k, int t) {
  if (t < 1) throw std::invalid_argument("g_bound requires t >= 1");
  std::uint64_t value = c;
  for (int i = 2; i <= t; ++i) {
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(value, static_cast<std::uint64_t>(i - 1), &next) ||
        __builtin_add_overflow(next, k, &next) || __builtin_add_overflow(next, c, &next)) {
      throw std::overflow_error("g_bound overflows 64 bits");
    }
    value = next;
  }
  return value;
}

std::uint64_t h_bound(std::uint64_t k, int t) {
  if (t < 1) throw std::invalid_argument("h_bound requires t >= 1");
  const std::uint64_t g = g_bound(static_cast<std::uint64_t>(t) + 1, k, t);
  if (g > UINT64_MAX / 2) throw std::overflow_error("h_bound overflows 64 bits");
  return 2 * g;
}

std::optional<std::string> validate_halfgraph(const Graph& g, const HalfgraphWitness& h) {
  if (h.u.size() != h.w.size()) return "sides have different sizes";
  if (h.u.empty()) return "order must be at least 1";
  std::vector<Vertex> all = h.u;
  all.insert(all.end(), h.w.begin(), h.w.end());
  for (Vertex x : all) {
    if (!g.valid(x)) return "vertex out of range";
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return "vertices not distinct";
  for (std::size_t i = 0; i < h.u.size(); ++i) {
    for (std::size_t j = 0; j < h.w.size(); ++j) {
      if (g.adjacent(h.u[i], h.w[j]) != (i <= j)) {
        return "u" + std::to_string(i + 1) + " w" + std::to_string(j + 1) + (i <= j ? " must" : " must not") +
               " be adjacent";
      }
    }
  }
  return std::nullopt;
}

namespace {

class HalfgraphSearch {
 public:
  HalfgraphSearch(const Graph& g, int t, const HalfgraphCaps& caps)
      : g_(g), n_(g.num_vertices()), t_(static_cast<std::size_t>(t)), caps_(caps), adj_(n_ * n_, 0), used_(n_, 0) {
    for (const auto& [a, b] : g.edges()) {
      adj_[index(a, b)] = 1;
      adj_[index(b, a)] = 1;
    }
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    u_.assign(t_, -1);
    w_.assign(t_, -1);
  }

  std::optional<HalfgraphWitness> run() {
    if (2 * t_ > n_) return std::nullopt;
    if (place(0)) return HalfgraphWitness{u_, w_};
    return std::nullopt;
  }

 private:
  std::size_t index(Vertex a, Vertex b) const { return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b); }

  bool place(std::size_t pos) {
    if (++nodes_ > caps_.max_nodes) {
      throw ScaleExceeded("half-graph search exceeded " + std::to_string(caps_.max_nodes) + " nodes");
    }
    if (pos == 2 * t_) return true;
    const std::size_t i = pos / 2;
    const bool is_u = pos % 2 == 0;
    // u_i needs the t - i neighbours w_i..w_t; w_i needs u_1..u_i
    const std::size_t need = is_u ? t_ - i : i + 1;
    for (Vertex x : order_) {
      if (g_.degree(x) < need) break;
      if (used_[static_cast<std::size_t>(x)]) continue;
      bool ok = true;
      if (is_u) {
        for (std::size_t j = 0; j < i && ok; ++j) ok = !adj_[index(x, w_[j])];
      } else {
        for (std::size_t j = 0; j <= i && ok; ++j) ok = adj_[index(x, u_[j])] != 0;
      }
      if (!ok) continue;
      (is_u ? u_ : w_)[i] = x;
      used_[static_cast<std::size_t>(x)] = 1;
      if (place(pos + 1)) return true;
      used_[static_cast<std::size_t>(x)] = 0;
    }
    (is_u ? u_ : w_)[i] = -1;
    return false;
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t t_;
  HalfgraphCaps caps_;
  std::vector<char> adj_;
  std::vector<char> used_;
  std::vector<Vertex> order_;
  std::vector<Vertex> u_;
  std::vector<Vertex> w_;
  std::uint64_t nodes_ = 0;
};

std::size_t count_in_neighbourhood(const Graph& g, const VertexSet& set, Vertex v) {
  return static_cast<std::size_t>(
      std::count_if(set.begin(), set.end(), [&](Vertex x) { return g.adjacent(v, x); }));
}

ChainFailure fail(int property, std::string message) { return ChainFailure{property, std::move(message)}; }

}  // namespace

std::optional<HalfgraphWitness> find_halfgraph(const Graph& g, int t, const HalfgraphCaps& caps) {
  if (t < 1) throw std::invalid_argument("find_halfgraph requires t >= 1");
  if (g.num_vertices() > caps.max_vertices) {
    throw ScaleExceeded("half-graph search limited to n <= " + std::to_string(caps.max_vertices));
  }
  return HalfgraphSearch(g, t, caps).run();
}

std::optional<ChainFailure> validate_chain(const Graph& g, const VertexSet& s, const std::vector<Vertex>& w,
                                           const std::vector<VertexSet>& x, std::uint64_t c) {
  if (w.size() != x.size()) return fail(0, "w and X have different lengths");
  std::vector<Vertex> sorted_w = w;
  std::sort(sorted_w.begin(), sorted_w.end());
  if (std::adjacent_find(sorted_w.begin(), sorted_w.end()) != sorted_w.end()) return fail(0, "w not distinct");
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string at = "i=" + std::to_string(i + 1) + ": ";
    for (Vertex y : x[i]) {
      if (!contains(s, y) || !g.adjacent(w[i], y)) return fail(1, at + "X_i not inside N(w_i) and S");
    }
    if (i > 0 && !std::includes(x[i].begin(), x[i].end(), x[i - 1].begin(), x[i - 1].end())) {
      return fail(2, at + "X_{i-1} not inside X_i");
    }
    std::uint64_t rhs = c;
    for (std::size_t j = 0; j < i; ++j) rhs += count_in_neighbourhood(g, x[i], w[j]);
    if (x[i].size() < rhs) {
      return fail(3, at + "|X_i| = " + std::to_string(x[i].size()) + " < " + std::to_string(rhs));
    }
  }
  return std::nullopt;
}

HalfgraphExtraction extract_halfgraph(const Graph& g, const std::vector<Vertex>& path, int k, int t,
                                      std::uint64_t c) {
  HalfgraphExtraction out;
  if (t < 1 || k < 0) throw std::invalid_argument("extract_halfgraph requires t >= 1, k >= 0");
  if (path.empty()) {
    out.failure = fail(0, "empty path");
    return out;
  }
  for (Vertex v : path) {
    if (!g.valid(v)) throw std::invalid_argument("path vertex out of range");
  }
  {
    std::vector<Vertex> sorted = path;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      out.failure = fail(0, "path repeats a vertex");
      return out;
    }
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (symdiff(g, path[i], path[i + 1]) > k) {
      out.failure = fail(0, "consecutive path vertices at position " + std::to_string(i + 1) + " are not " +
                                std::to_string(k) + "-near-twins");
      return out;
    }
  }
  if (c < static_cast<std::uint64_t>(t) + 1) {
    out.failure = fail(0, "c must be at least t + 1");
    return out;
  }
  for (Vertex y : g.neighbors(path.back())) {
    if (!g.adjacent(path.front(), y)) out.s.push_back(y);
  }
  const std::uint64_t need = g_bound(c, static_cast<std::uint64_t>(k), t);
  if (out.s.size() < need) {
    out.failure = fail(0, "|S| = " + std::to_string(out.s.size()) + " < g(c,k,t) = " + std::to_string(need));
    return out;
  }

  // built from w_t down to w_1
  std::vector<Vertex> w_rev;
  std::vector<VertexSet> x_rev;
  std::size_t last = path.size();  // prefix v_1..v_last
  VertexSet current = out.s;
  for (int level = t; level >= 1; --level) {
    w_rev.push_back(path[last - 1]);
    x_rev.push_back(current);
    if (level == 1) break;
    const std::uint64_t threshold = g_bound(c, static_cast<std::uint64_t>(k), level - 1);
    std::size_t q = 0;
    while (q < last && count_in_neighbourhood(g, current, path[q]) < threshold) ++q;
    if (q + 1 >= last) {
      out.failure = fail(0, "no split vertex before position " + std::to_string(last) + " at level " +
                                std::to_string(level));
      return out;
    }
    VertexSet next;
    for (Vertex y : current) {
      if (g.adjacent(path[q], y)) next.push_back(y);
    }
    current = std::move(next);
    last = q + 1;
  }
  out.w.assign(w_rev.rbegin(), w_rev.rend());
  out.x.assign(x_rev.rbegin(), x_rev.rend());
  if (auto bad = validate_chain(g, out.s, out.w, out.x, c)) {
    out.failure = std::move(bad);
    return out;
  }

  for (std::size_t i = 0; i < out.x.size(); ++i) {
    Vertex pick = -1;
    for (Vertex y : out.x[i]) {
      if (std::find(out.w.begin(), out.w.end(), y) != out.w.end()) continue;
      bool seen = false;
      for (std::size_t j = 0; j < i && !seen; ++j) seen = g.adjacent(y, out.w[j]);
      if (!seen) {
        pick = y;
        break;
      }
    }
    if (pick < 0) {
      out.failure = fail(3, "no candidate for u" + std::to_string(i + 1));
      return out;
    }
    out.u.push_back(pick);
  }
  HalfgraphWitness h{out.u, out.w};
  if (auto bad = validate_halfgraph(g, h)) {
    out.failure = fail(4, *bad);
    return out;
  }
  out.witness = std::move(h);
  return out;
}

std::vector<Vertex> nt_path(const NearTwinView& view, Vertex u, Vertex v) {
  const Graph& nt = view.nt_graph;
  if (!nt.valid(u) || !nt.valid(v)) throw std::invalid_argument("nt_path: vertex out of range");
  std::vector<Vertex> parent(nt.num_vertices(), -2);
  parent[static_cast<std::size_t>(u)] = -1;
  std::vector<Vertex> queue{u};
  for (std::size_t head = 0; head < queue.size() && parent[static_cast<std::size_t>(v)] == -2; ++head) {
    for (Vertex w : nt.neighbors(queue[head])) {
      if (parent[static_cast<std::size_t>(w)] != -2) continue;
      parent[static_cast<std::size_t>(w)] = queue[head];
      queue.push_back(w);
    }
  }
  if (parent[static_cast<std::size_t>(v)] == -2) return {};
  std::vector<Vertex> path;
  for (Vertex x = v; x != -1; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

HalfgraphExtraction halfgraph_from_pair(const Graph& g, const NearTwinView& view, Vertex u, Vertex v, int t) {
  auto path = nt_path(view, u, v);
  if (path.empty()) {
    HalfgraphExtraction out;
    out.failure = fail(0, "vertices lie in different near-twin components");
    return out;
  }
  const std::uint64_t c = static_cast<std::uint64_t>(t) + 1;
  const std::uint64_t need = g_bound(c, static_cast<std::uint64_t>(view.k), t);
  std::size_t forward = 0;
  for (Vertex y : g.neighbors(v)) forward += g.adjacent(u, y) ? 0 : 1;
  if (forward < need) std::reverse(path.begin(), path.end());
  return extract_halfgraph(g, path, view.k, t, c);
}

}  // namespace treerank
