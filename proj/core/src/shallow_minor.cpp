#include "treerank/shallow_minor.hpp"

#include <algorithm>
#include <stdexcept>

#include "treerank/errors.hpp"

namespace treerank {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("bound arithmetic overflows 64 bits");
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("bound arithmetic overflows 64 bits");
  return out;
}

// sum_{i=0}^{levels-1} m^i
std::uint64_t geometric(int levels, std::uint64_t m) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (int i = 0; i < levels; ++i) {
    total = checked_add(total, power);
    if (i + 1 < levels) power = checked_mul(power, m);
  }
  return total;
}

}  // namespace

std::uint64_t tree_size(int depth, int branching) {
  if (depth < 0 || branching < 1) throw std::invalid_argument("tree_size requires depth >= 0, branching >= 1");
  return geometric(depth + 1, static_cast<std::uint64_t>(branching));
}

std::uint64_t w_count(int d, std::uint64_t m, int r) {
  if (d < 1 || m < 1 || r < 0) throw std::invalid_argument("w_count requires d >= 1, m >= 1, r >= 0");
  const std::uint64_t v = geometric(d, m);
  return checked_add(v, checked_mul(static_cast<std::uint64_t>(r), v - 1));
}

std::uint64_t m_branching(int d, std::uint64_t m, int r) {
  const std::uint64_t w = w_count(d, m, r);
  return checked_add(checked_add(checked_mul(m, w), checked_mul(static_cast<std::uint64_t>(r), m)), m);
}

std::uint64_t m_prime(int d, int r, std::uint64_t m) {
  if (d < 1 || r < 1 || m < 1) throw std::invalid_argument("m_prime requires d >= 1, r >= 1, m >= 1");
  if (d == 1) return m - 1;
  const std::uint64_t inner = m_prime(d - 1, r, m_branching(d, m, r));
  return std::max(inner, checked_mul(static_cast<std::uint64_t>(r), m));
}

std::optional<std::string> validate_embedding(const Graph& g, const Embedding& e, int r) {
  if (e.depth < 0 || e.branching < 1) return "bad tree parameters";
  std::uint64_t size = 0;
  try {
    size = tree_size(e.depth, e.branching);
  } catch (const std::overflow_error&) {
    return "tree too large";
  }
  if (e.principal.size() != size) return "principal count does not match the tree size";
  if (e.paths.size() != size) return "path count does not match the tree size";
  if (size > 0 && !e.paths[0].empty()) return "root must not have an incoming path";
  std::vector<char> taken(g.num_vertices(), 0);
  for (Vertex p : e.principal) {
    if (!g.valid(p)) return "principal vertex out of range";
    if (taken[static_cast<std::size_t>(p)]) return "principal vertices not distinct";
    taken[static_cast<std::size_t>(p)] = 1;
  }
  const auto m = static_cast<std::size_t>(e.branching);
  for (std::size_t c = 1; c < size; ++c) {
    const auto& path = e.paths[c];
    const std::string where = "path " + std::to_string(c) + ": ";
    if (path.size() < 2) return where + "too short";
    if (path.front() != e.principal[(c - 1) / m]) return where + "does not start at the parent principal";
    if (path.back() != e.principal[c]) return where + "does not end at the child principal";
    if (path.size() - 2 > static_cast<std::size_t>(std::max(r, 0))) return where + "more than r internal vertices";
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!g.valid(path[i + 1]) || !g.adjacent(path[i], path[i + 1])) return where + "consecutive vertices not adjacent";
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      const auto x = static_cast<std::size_t>(path[i]);
      if (taken[x]) return where + "internal vertex reused";
      taken[x] = 1;
    }
  }
  return std::nullopt;
}

namespace {

class TreeSearch {
 public:
  TreeSearch(const Graph& g, int d, int m, int r, const SearchCaps& caps)
      : g_(g), m_(m), r_(r), caps_(caps), size_(static_cast<std::size_t>(tree_size(d, m))), used_(g.num_vertices(), 0) {
    // node i is internal (has children) iff its first child index is in range
    need_degree_.assign(size_, 0);
    for (std::size_t i = 0; i < size_; ++i) {
      const bool internal = static_cast<std::uint64_t>(m) * i + 1 < size_;
      if (internal) need_degree_[i] = static_cast<std::size_t>(m) + (i == 0 ? 0 : 1);
    }
    emb_.depth = d;
    emb_.branching = m;
    emb_.principal.assign(size_, -1);
    emb_.paths.assign(size_, {});
  }

  std::optional<Embedding> run() {
    if (size_ > g_.num_vertices()) return std::nullopt;
    for (std::size_t v = 0; v < g_.num_vertices(); ++v) {
      const auto root = static_cast<Vertex>(v);
      if (g_.degree(root) < need_degree_[0]) continue;
      tick();
      place_principal(0, root, {});
      if (place(1)) return emb_;
      unplace_principal(0);
    }
    return std::nullopt;
  }

 private:
  void tick() {
    if (++nodes_ > caps_.max_nodes) {
      throw ScaleExceeded("shallow tree search exceeded " + std::to_string(caps_.max_nodes) + " nodes");
    }
  }

  void place_principal(std::size_t i, Vertex v, std::vector<Vertex> path) {
    emb_.principal[i] = v;
    emb_.paths[i] = std::move(path);
    used_[static_cast<std::size_t>(v)] = 1;
  }

  void unplace_principal(std::size_t i) {
    used_[static_cast<std::size_t>(emb_.principal[i])] = 0;
    emb_.principal[i] = -1;
    emb_.paths[i].clear();
  }

  bool place(std::size_t i) {
    if (i == size_) return true;
    const std::size_t parent = (i - 1) / static_cast<std::size_t>(m_);
    // siblings get increasing principals; any embedding can be reordered so
    const bool first_sibling = (i - 1) % static_cast<std::size_t>(m_) == 0;
    const Vertex floor = first_sibling ? -1 : emb_.principal[i - 1];
    path_.assign(1, emb_.principal[parent]);
    return extend(i, emb_.principal[parent], 0, floor);
  }

  bool extend(std::size_t i, Vertex cur, int internal, Vertex floor) {
    tick();
    for (Vertex y : g_.neighbors(cur)) {
      const auto yi = static_cast<std::size_t>(y);
      if (used_[yi]) continue;
      if (y > floor && g_.degree(y) >= need_degree_[i]) {
        path_.push_back(y);
        place_principal(i, y, path_);
        auto saved = path_;
        if (place(i + 1)) return true;
        path_ = std::move(saved);
        unplace_principal(i);
        path_.pop_back();
      }
      if (internal < r_ && g_.degree(y) >= 2) {
        used_[yi] = 1;
        path_.push_back(y);
        if (extend(i, y, internal + 1, floor)) return true;
        path_.pop_back();
        used_[yi] = 0;
      }
    }
    return false;
  }

  const Graph& g_;
  int m_;
  int r_;
  SearchCaps caps_;
  std::size_t size_;
  std::vector<char> used_;
  std::vector<std::size_t> need_degree_;
  std::vector<Vertex> path_;
  Embedding emb_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::optional<Embedding> contains_shallow_tree(const Graph& g, int d, int m, int r, const SearchCaps& caps) {
  if (d < 0 || m < 1 || r < 0) throw std::invalid_argument("contains_shallow_tree requires d >= 0, m >= 1, r >= 0");
  if (g.num_vertices() > caps.max_vertices) {
    throw ScaleExceeded("shallow tree search limited to n <= " + std::to_string(caps.max_vertices));
  }
  std::uint64_t size = 0;
  try {
    size = tree_size(d, m);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
  if (size > g.num_vertices()) return std::nullopt;
  return TreeSearch(g, d, m, r, caps).run();
}

namespace {

// kids[i] hangs below v via the internal path vertices internal[i]
struct TreeNode {
  Vertex v = -1;
  std::vector<std::vector<Vertex>> internal;
  std::vector<TreeNode> kids;

  void add(std::vector<Vertex> path, TreeNode child) {
    internal.push_back(std::move(path));
    kids.push_back(std::move(child));
  }
};

void collect(const TreeNode& node, std::vector<Vertex>& out) {
  out.push_back(node.v);
  for (std::size_t i = 0; i < node.kids.size(); ++i) {
    out.insert(out.end(), node.internal[i].begin(), node.internal[i].end());
    collect(node.kids[i], out);
  }
}

void trim(TreeNode& node, std::size_t b) {
  if (node.kids.size() > b) {
    node.kids.resize(b);
    node.internal.resize(b);
  }
  for (auto& k : node.kids) trim(k, b);
}

class Extractor {
 public:
  Extractor(const Graph& g, const RankAssignment& ra, int r) : g_(g), ra_(ra), r_(r) {}

  TreeNode build(Vertex x, int level, std::uint64_t b) {
    if (b > g_.num_vertices()) throw InvariantViolation("requested branching exceeds the vertex count");
    const auto bs = static_cast<std::size_t>(b);
    TreeNode node;
    node.v = x;
    if (level == 1) {
      auto nb = g_.neighbors(x);
      if (nb.size() < bs) throw InvariantViolation("vertex " + std::to_string(x) + " has fewer than " +
                                                   std::to_string(b) + " neighbours");
      for (std::size_t i = 0; i < bs; ++i) node.add({}, TreeNode{nb[i], {}, {}});
      return node;
    }

    std::vector<char> blocked(g_.num_vertices(), 0);
    std::vector<std::vector<Vertex>> paths;
    for (std::size_t i = 0; i < bs; ++i) {
      auto path = nearest_ranked(x, static_cast<std::uint32_t>(level), blocked);
      if (path.empty()) {
        throw InvariantViolation("no path from " + std::to_string(x) + " to a vertex of rank >= " +
                                 std::to_string(level));
      }
      for (Vertex u : path) blocked[static_cast<std::size_t>(u)] = 1;
      paths.push_back(std::move(path));
    }

    std::vector<char> used = blocked;
    used[static_cast<std::size_t>(x)] = 1;
    const std::uint64_t wide = m_branching(level, b, r_);
    std::vector<Vertex> scratch;
    for (auto& path : paths) {
      const Vertex u = path.back();
      TreeNode sub = build(u, level - 1, wide);
      TreeNode kept;
      kept.v = u;
      for (std::size_t i = 0; i < sub.kids.size() && kept.kids.size() < bs; ++i) {
        trim(sub.kids[i], bs);
        scratch = sub.internal[i];
        collect(sub.kids[i], scratch);
        const bool clash = std::any_of(scratch.begin(), scratch.end(),
                                       [&](Vertex y) { return used[static_cast<std::size_t>(y)] != 0; });
        if (!clash) kept.add(std::move(sub.internal[i]), std::move(sub.kids[i]));
      }
      if (kept.kids.size() < bs) {
        throw InvariantViolation("subtree at " + std::to_string(u) + " lost too many branches");
      }
      scratch.clear();
      collect(kept, scratch);
      for (Vertex y : scratch) used[static_cast<std::size_t>(y)] = 1;
      path.pop_back();
      node.add(std::move(path), std::move(kept));
    }
    return node;
  }

 private:
  // BFS shortest path (excluding x) to the nearest vertex of rank >= level
  // in G minus `blocked`, ties to the smallest endpoint id.
  std::vector<Vertex> nearest_ranked(Vertex x, std::uint32_t level, const std::vector<char>& blocked) const {
    std::vector<Vertex> parent(g_.num_vertices(), -2);
    parent[static_cast<std::size_t>(x)] = -1;
    std::vector<Vertex> frontier{x};
    for (int depth = 0; depth < r_ && !frontier.empty(); ++depth) {
      std::vector<Vertex> next;
      Vertex best = -1;
      for (Vertex u : frontier) {
        for (Vertex w : g_.neighbors(u)) {
          const auto wi = static_cast<std::size_t>(w);
          if (parent[wi] != -2 || blocked[wi]) continue;
          parent[wi] = u;
          next.push_back(w);
          if (ra_.rank[wi] >= Rank(level) && (best < 0 || w < best)) best = w;
        }
      }
      if (best >= 0) {
        std::vector<Vertex> path;
        for (Vertex y = best; y != x; y = parent[static_cast<std::size_t>(y)]) path.push_back(y);
        std::reverse(path.begin(), path.end());
        return path;
      }
      frontier = std::move(next);
    }
    return {};
  }

  const Graph& g_;
  const RankAssignment& ra_;
  int r_;
};

Embedding to_embedding(const TreeNode& root, int d, int m) {
  Embedding e;
  e.depth = d;
  e.branching = m;
  std::vector<const TreeNode*> order{&root};
  e.principal.push_back(root.v);
  e.paths.emplace_back();
  for (std::size_t head = 0; head < order.size(); ++head) {
    const TreeNode* node = order[head];
    for (std::size_t i = 0; i < node->kids.size(); ++i) {
      const TreeNode& child = node->kids[i];
      std::vector<Vertex> path{node->v};
      path.insert(path.end(), node->internal[i].begin(), node->internal[i].end());
      path.push_back(child.v);
      e.principal.push_back(child.v);
      e.paths.push_back(std::move(path));
      order.push_back(&child);
    }
  }
  return e;
}

}  // namespace

Embedding extract_shallow_tree(const Graph& g, const RankAssignment& ra, Vertex v, int d, int m, int r) {
  if (d < 1 || m < 1 || r < 1) throw std::invalid_argument("extract_shallow_tree requires d, m, r >= 1");
  if (!g.valid(v)) throw std::invalid_argument("vertex out of range");
  if (ra.rank.size() != g.num_vertices()) throw std::invalid_argument("ranking does not match the graph");
  const std::uint64_t need = m_prime(d, r, static_cast<std::uint64_t>(m));
  if (ra.params.r != r || static_cast<std::uint64_t>(ra.params.m) != need) {
    throw std::invalid_argument("ranking must use parameters (r, m') = (" + std::to_string(r) + ", " +
                                std::to_string(need) + ")");
  }
  if (!(ra.rank[static_cast<std::size_t>(v)] > Rank(static_cast<std::uint32_t>(d)))) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " has rank " +
                                ra.rank[static_cast<std::size_t>(v)].to_string() + ", need more than " +
                                std::to_string(d));
  }
  Extractor ex(g, ra, r);
  return to_embedding(ex.build(v, d, static_cast<std::uint64_t>(m)), d, m);
}

}  // namespace treerank
