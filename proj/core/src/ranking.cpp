#include "treerank/ranking.hpp"

#include <algorithm>
#include <stdexcept>

#include "treerank/errors.hpp"

namespace treerank {

std::string Rank::to_string() const { return is_finite() ? std::to_string(value_) : "inf"; }

bool RankAssignment::all_finite() const {
  return std::all_of(rank.begin(), rank.end(), [](Rank x) { return x.is_finite(); });
}

Rank RankAssignment::max_rank() const {
  Rank best(0);
  for (Rank x : rank) best = std::max(best, x);
  return best;
}

namespace {

// Scratch state for repeated separator searches on one graph. BFS marks are
// epoch-stamped so a search only touches the explored ball.
class SeparatorSearcher {
 public:
  explicit SeparatorSearcher(const Graph& g)
      : g_(g), removed_(g.num_vertices(), 0), seen_(g.num_vertices(), 0), dist_(g.num_vertices(), 0),
        parent_(g.num_vertices(), -1) {}

  // `is_target` is indexed by vertex; `source` is never treated as a target.
  SeparatorResult run(Vertex source, const std::vector<char>& is_target, int r, int m) {
    source_ = source;
    is_target_ = &is_target;
    r_ = r;
    expansions_ = 0;
    chosen_.clear();
    SeparatorResult out;
    if (branch(m)) out.separator = make_vertex_set(chosen_);
    out.expansions = expansions_;
    for (Vertex u : chosen_) removed_[static_cast<std::size_t>(u)] = 0;
    chosen_.clear();
    return out;
  }

 private:
  bool branch(int budget) {
    ++expansions_;
    std::vector<Vertex> path = shortest_violating_path();
    if (path.empty()) return true;
    if (budget == 0) return false;
    for (Vertex u : path) {
      removed_[static_cast<std::size_t>(u)] = 1;
      chosen_.push_back(u);
      if (branch(budget - 1)) return true;
      chosen_.pop_back();
      removed_[static_cast<std::size_t>(u)] = 0;
    }
    return false;
  }

  // Vertices of a shortest path (excluding the source, ordered outward) to
  // the nearest target within distance r in G - chosen, or empty.
  std::vector<Vertex> shortest_violating_path() {
    if (++epoch_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      epoch_ = 1;
    }
    queue_.clear();
    queue_.push_back(source_);
    seen_[static_cast<std::size_t>(source_)] = epoch_;
    dist_[static_cast<std::size_t>(source_)] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      const int du = dist_[static_cast<std::size_t>(u)];
      if (du >= r_) continue;
      for (Vertex w : g_.neighbors(u)) {
        const auto wi = static_cast<std::size_t>(w);
        if (seen_[wi] == epoch_ || removed_[wi]) continue;
        seen_[wi] = epoch_;
        dist_[wi] = du + 1;
        parent_[wi] = u;
        if ((*is_target_)[wi]) {
          std::vector<Vertex> path;
          for (Vertex x = w; x != source_; x = parent_[static_cast<std::size_t>(x)]) path.push_back(x);
          std::reverse(path.begin(), path.end());
          return path;
        }
        queue_.push_back(w);
      }
    }
    return {};
  }

  const Graph& g_;
  std::vector<char> removed_;
  std::vector<std::uint32_t> seen_;
  std::vector<int> dist_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> queue_;
  std::vector<Vertex> chosen_;
  std::uint32_t epoch_ = 0;
  const std::vector<char>* is_target_ = nullptr;
  Vertex source_ = 0;
  int r_ = 0;
  std::uint64_t expansions_ = 0;
};

void check_params(const Graph& g, Vertex v, int r, int m) {
  if (!g.valid(v)) throw std::invalid_argument("vertex out of range");
  if (r < 0 || m < 0) throw std::invalid_argument("r and m must be non-negative");
}

std::vector<char> target_mask(const Graph& g, Vertex v, const VertexSet& targets) {
  std::vector<char> mask(g.num_vertices(), 0);
  for (Vertex a : targets) {
    if (!g.valid(a)) throw std::invalid_argument("target vertex out of range");
    if (a == v) throw std::invalid_argument("target set must not contain the source vertex");
    mask[static_cast<std::size_t>(a)] = 1;
  }
  return mask;
}

}  // namespace

RankAssignment compute_ranking(const Graph& g, int r, int m) {
  if (r < 1 || m < 0) throw std::invalid_argument("compute_ranking requires r >= 1 and m >= 0");
  const std::size_t n = g.num_vertices();
  RankAssignment out;
  out.params = {r, m};
  out.rank.assign(n, Rank::infinity());
  out.witness.assign(n, std::nullopt);

  std::vector<char> infinite(n, 1);
  std::size_t remaining = n;
  SeparatorSearcher searcher(g);
  std::vector<std::pair<Vertex, VertexSet>> assigned;

  for (std::uint32_t round = 1; remaining > 0; ++round) {
    assigned.clear();
    // every check in this round reads `infinite` as frozen at the end of the previous round
    for (std::size_t v = 0; v < n; ++v) {
      if (!infinite[v]) continue;
      auto result = searcher.run(static_cast<Vertex>(v), infinite, r, m);
      ++out.stats.searches;
      out.stats.total_expansions += result.expansions;
      out.stats.max_expansions = std::max(out.stats.max_expansions, result.expansions);
      if (result.separator) assigned.emplace_back(static_cast<Vertex>(v), std::move(*result.separator));
    }
    out.stats.rounds = round;
    if (assigned.empty()) break;
    for (auto& [v, sep] : assigned) {
      out.rank[static_cast<std::size_t>(v)] = Rank(round);
      out.witness[static_cast<std::size_t>(v)] = std::move(sep);
      infinite[static_cast<std::size_t>(v)] = 0;
      --remaining;
    }
  }
  return out;
}

SeparatorResult separator_search(const Graph& g, Vertex v, const VertexSet& targets, int r, int m) {
  check_params(g, v, r, m);
  auto mask = target_mask(g, v, targets);
  SeparatorSearcher searcher(g);
  return searcher.run(v, mask, r, m);
}

namespace {

bool ball_avoids(const Graph& g, Vertex v, const std::vector<char>& removed, const std::vector<char>& is_target,
                 int r) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue{v};
  dist[static_cast<std::size_t>(v)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    if (dist[static_cast<std::size_t>(u)] >= r) continue;
    for (Vertex w : g.neighbors(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (dist[wi] >= 0 || removed[wi]) continue;
      if (is_target[wi]) return false;
      dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
      queue.push_back(w);
    }
  }
  return true;
}

}  // namespace

std::optional<VertexSet> separator_search_bruteforce(const Graph& g, Vertex v, const VertexSet& targets, int r, int m,
                                                     const BruteforceCaps& caps) {
  check_params(g, v, r, m);
  if (g.num_vertices() > caps.max_vertices || m > caps.max_budget) {
    throw ScaleExceeded("brute-force separator search limited to n <= " + std::to_string(caps.max_vertices) +
                        ", m <= " + std::to_string(caps.max_budget));
  }
  auto mask = target_mask(g, v, targets);
  std::vector<Vertex> pool;
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    if (static_cast<Vertex>(u) != v) pool.push_back(static_cast<Vertex>(u));
  }
  std::vector<char> removed(g.num_vertices(), 0);
  const int max_size = std::min<int>(m, static_cast<int>(pool.size()));
  for (int size = 0; size <= max_size; ++size) {
    // lexicographic combinations of `size` indices into pool
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : idx) removed[static_cast<std::size_t>(pool[static_cast<std::size_t>(i)])] = 1;
      if (ball_avoids(g, v, removed, mask, r)) {
        VertexSet s;
        for (int i : idx) s.push_back(pool[static_cast<std::size_t>(i)]);
        return s;
      }
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == static_cast<int>(pool.size()) - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < size; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return std::nullopt;
}

std::vector<Vertex> rank_order(const RankAssignment& ra) {
  if (!ra.all_finite()) throw std::invalid_argument("rank_order requires all ranks finite");
  std::vector<Vertex> order(ra.rank.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Vertex>(i);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return ra.rank[static_cast<std::size_t>(a)] < ra.rank[static_cast<std::size_t>(b)];
  });
  return order;
}

namespace {

std::vector<std::size_t> positions(const Graph& g, const std::vector<Vertex>& order) {
  if (order.size() != g.num_vertices()) throw std::invalid_argument("order must list every vertex once");
  std::vector<std::size_t> pos(order.size(), order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!g.valid(order[i]) || pos[static_cast<std::size_t>(order[i])] != order.size()) {
      throw std::invalid_argument("order must list every vertex once");
    }
    pos[static_cast<std::size_t>(order[i])] = i;
  }
  return pos;
}

class PathPacker {
 public:
  PathPacker(const Graph& g, Vertex v, std::vector<char> is_target, int r)
      : g_(g), v_(v), is_target_(std::move(is_target)), used_(g.num_vertices(), 0), r_(r) {
    used_[static_cast<std::size_t>(v)] = 1;
    first_hops_.assign(g.neighbors(v).begin(), g.neighbors(v).end());
  }

  int solve() {
    if (r_ >= 1) pack(0, 0);
    return best_;
  }

 private:
  // Each path is attached to its first vertex after v; a path stops at the
  // first target it meets, which never loses optimality.
  void pack(std::size_t idx, int count) {
    if (count + static_cast<int>(first_hops_.size() - idx) <= best_) return;
    if (idx == first_hops_.size()) {
      best_ = std::max(best_, count);
      return;
    }
    const Vertex x = first_hops_[idx];
    if (!used_[static_cast<std::size_t>(x)]) extend(x, 1, idx, count);
    pack(idx + 1, count);
  }

  void extend(Vertex cur, int length, std::size_t idx, int count) {
    const auto ci = static_cast<std::size_t>(cur);
    used_[ci] = 1;
    if (is_target_[ci]) {
      pack(idx + 1, count + 1);
    } else if (length < r_) {
      for (Vertex y : g_.neighbors(cur)) {
        if (!used_[static_cast<std::size_t>(y)]) extend(y, length + 1, idx, count);
      }
    }
    used_[ci] = 0;
  }

  const Graph& g_;
  Vertex v_;
  std::vector<char> is_target_;
  std::vector<char> used_;
  std::vector<Vertex> first_hops_;
  int r_;
  int best_ = 0;
};

}  // namespace

int backconnectivity(const Graph& g, const std::vector<Vertex>& order, Vertex v, int r, const PackingCaps& caps) {
  if (!g.valid(v)) throw std::invalid_argument("vertex out of range");
  if (g.num_vertices() > caps.max_vertices || r > caps.max_radius) {
    throw ScaleExceeded("backconnectivity limited to n <= " + std::to_string(caps.max_vertices) +
                        ", r <= " + std::to_string(caps.max_radius));
  }
  const auto pos = positions(g, order);
  std::vector<char> is_target(g.num_vertices(), 0);
  for (std::size_t w = 0; w < g.num_vertices(); ++w) {
    is_target[w] = pos[w] > pos[static_cast<std::size_t>(v)] ? 1 : 0;
  }
  return PathPacker(g, v, std::move(is_target), r).solve();
}

namespace {

// 1 + number of w outside `smaller` (w != v) reachable from v by a path of
// length <= r whose internal vertices all lie in `smaller`.
int reach_count(const Graph& g, Vertex v, const std::vector<char>& smaller, int r) {
  std::vector<int> dist(g.num_vertices(), -1);
  std::vector<Vertex> queue{v};
  dist[static_cast<std::size_t>(v)] = 0;
  int count = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex u = queue[head];
    if (dist[static_cast<std::size_t>(u)] >= r) continue;
    for (Vertex w : g.neighbors(u)) {
      const auto wi = static_cast<std::size_t>(w);
      if (dist[wi] >= 0) continue;
      dist[wi] = dist[static_cast<std::size_t>(u)] + 1;
      if (smaller[wi]) {
        queue.push_back(w);
      } else {
        ++count;
      }
    }
  }
  return count;
}

}  // namespace

int strongly_reachable_count(const Graph& g, const std::vector<Vertex>& order, Vertex v, int r) {
  const auto pos = positions(g, order);
  std::vector<char> smaller(g.num_vertices(), 0);
  for (std::size_t w = 0; w < g.num_vertices(); ++w) smaller[w] = pos[w] < pos[static_cast<std::size_t>(v)] ? 1 : 0;
  return reach_count(g, v, smaller, r);
}

int scol_bruteforce(const Graph& g, int r, std::size_t max_vertices) {
  const std::size_t n = g.num_vertices();
  if (n > max_vertices || n > 20) throw ScaleExceeded("scol_bruteforce limited to n <= " + std::to_string(max_vertices));
  if (r < 0) throw std::invalid_argument("r must be non-negative");
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  constexpr int kUnset = std::numeric_limits<int>::max();
  // best[L]: min over orderings of L (placed first) of the max count so far
  std::vector<int> best(std::size_t{1} << n, kUnset);
  best[0] = 0;
  std::vector<char> smaller(n, 0);
  for (std::uint32_t placed = 0; placed < full; ++placed) {
    if (best[placed] == kUnset) continue;
    for (std::size_t u = 0; u < n; ++u) smaller[u] = (placed >> u) & 1u;
    for (std::size_t v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) continue;
      const int here = std::max(best[placed], reach_count(g, static_cast<Vertex>(v), smaller, r));
      auto& slot = best[placed | (1u << v)];
      slot = std::min(slot, here);
    }
  }
  return best[full];
}

}  // namespace treerank
