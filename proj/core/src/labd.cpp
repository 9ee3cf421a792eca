#include "treerank/labd.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "treerank/errors.hpp"
#include "treerank/graph_ops.hpp"
#include "treerank/neartwin.hpp"

namespace treerank {

ParamFunction ParamFunction::constant(std::uint64_t c) { return {Kind::kConstant, c, 0}; }
ParamFunction ParamFunction::linear(std::uint64_t a, std::uint64_t b) { return {Kind::kLinear, a, b}; }
ParamFunction ParamFunction::exp2() { return {Kind::kExp2, 0, 0}; }
ParamFunction ParamFunction::tower() { return {Kind::kTower, 0, 0}; }

ParamFunction ParamFunction::table(std::vector<std::optional<std::uint64_t>> entries) {
  if (entries.empty()) throw std::invalid_argument("table function needs at least one entry");
  ParamFunction f(Kind::kTable, 0, 0);
  f.table_ = std::move(entries);
  return f;
}

namespace {

std::uint64_t parse_number(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ParamFunction ParamFunction::parse_table(std::istream& in) {
  std::vector<std::optional<std::uint64_t>> entries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string r_text, value_text, extra;
    if (!(fields >> r_text)) continue;
    if (!(fields >> value_text) || (fields >> extra)) {
      throw std::invalid_argument("table line " + std::to_string(lineno) + ": expected '<r> <value|over>'");
    }
    if (parse_number(r_text, "table index") != entries.size()) {
      throw std::invalid_argument("table line " + std::to_string(lineno) + ": indices must run 0, 1, 2, ...");
    }
    if (value_text == "over") {
      entries.emplace_back(std::nullopt);
    } else {
      entries.emplace_back(parse_number(value_text, "table value"));
    }
  }
  return table(std::move(entries));
}

ParamFunction ParamFunction::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (name == "exp2" && colon == std::string_view::npos) return exp2();
  if (name == "tower" && colon == std::string_view::npos) return tower();
  if (name == "const" && colon != std::string_view::npos) return constant(parse_number(args, "constant"));
  if (name == "linear" && colon != std::string_view::npos) {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("linear needs 'linear:a,b'");
    return linear(parse_number(args.substr(0, comma), "slope"), parse_number(args.substr(comma + 1), "offset"));
  }
  if (name == "table" && colon != std::string_view::npos) {
    std::ifstream in{std::string(args)};
    if (!in) throw std::invalid_argument("cannot open table file '" + std::string(args) + "'");
    return parse_table(in);
  }
  throw std::invalid_argument("unknown function spec '" + std::string(spec) + "'");
}

std::optional<std::uint64_t> ParamFunction::evaluate(std::uint64_t r, std::uint64_t n) const {
  std::uint64_t value = 0;
  switch (kind_) {
    case Kind::kConstant:
      value = a_;
      break;
    case Kind::kLinear:
      if (__builtin_mul_overflow(a_, r, &value) || __builtin_add_overflow(value, b_, &value)) return std::nullopt;
      break;
    case Kind::kExp2:
      if (r >= 64) return std::nullopt;
      value = std::uint64_t{1} << r;
      break;
    case Kind::kTower:
      value = 1;
      for (std::uint64_t i = 0; i < r; ++i) {
        if (value >= 64) return std::nullopt;
        value = std::uint64_t{1} << value;
        if (value > n) return std::nullopt;
      }
      break;
    case Kind::kTable: {
      const auto& entry = table_[std::min<std::uint64_t>(r, table_.size() - 1)];
      if (!entry) return std::nullopt;
      value = *entry;
      break;
    }
  }
  if (value > n) return std::nullopt;
  return value;
}

std::string ParamFunction::to_string() const {
  switch (kind_) {
    case Kind::kConstant:
      return "const:" + std::to_string(a_);
    case Kind::kLinear:
      return "linear:" + std::to_string(a_) + "," + std::to_string(b_);
    case Kind::kExp2:
      return "exp2";
    case Kind::kTower:
      return "tower";
    case Kind::kTable: {
      std::string out = "table[";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i > 0) out += ",";
        out += table_[i] ? std::to_string(*table_[i]) : "over";
      }
      return out + "]";
    }
  }
  return {};
}

LabdResult labd_check(const Graph& g, const LabdSpec& spec) {
  const std::size_t n = g.num_vertices();
  LabdResult result;
  // thresholds per r, or nothing when the condition is vacuous at this n
  std::vector<std::optional<std::pair<std::uint64_t, std::uint64_t>>> limits(n + 1);
  for (std::uint64_t r = 0; r <= n; ++r) {
    auto f = spec.f.evaluate(r, n);
    auto d = spec.d.evaluate(r, n);
    if (f && d) limits[r] = std::make_pair(*f, *d);
  }
  if (std::none_of(limits.begin(), limits.end(), [](const auto& l) { return l.has_value(); })) return result;

  // per vertex the smallest failing radius; the answer is the least (r, v)
  for (std::size_t v = 0; v < n; ++v) {
    const auto dist = distances_from(g, static_cast<Vertex>(v));
    std::vector<Vertex> order;
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] != kUnreachable) order.push_back(static_cast<Vertex>(u));
    }
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
    });
    const auto ecc = static_cast<std::uint64_t>(dist[static_cast<std::size_t>(order.back())]);
    const std::uint64_t stop = result.failure ? result.failure->r : n;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> last;
    for (std::uint64_t r = 0; r <= stop; ++r) {
      if (!limits[r]) continue;
      // past the eccentricity the ball no longer grows
      if (r > ecc && last == limits[r]) continue;
      last = limits[r];
      const auto [f, d] = *limits[r];
      VertexSet offending;
      for (Vertex u : order) {
        if (static_cast<std::uint64_t>(dist[static_cast<std::size_t>(u)]) > r) break;
        if (g.degree(u) > d) offending.push_back(u);
      }
      if (offending.size() > f) {
        if (!result.failure || r < result.failure->r) {
          std::sort(offending.begin(), offending.end());
          result.holds = false;
          result.failure = LabdCertificate{r, static_cast<Vertex>(v), std::move(offending)};
        }
        break;
      }
    }
  }
  return result;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
void reset(Bits& b, std::size_t i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
bool empty(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

// Maximum clique in the "not near-twins" graph, stopping early once the
// clique exceeds `stop_above`. Greedy colouring gives the bound.
class CliqueSearch {
 public:
  CliqueSearch(std::vector<Bits> adj, std::size_t stop_above, std::uint64_t max_nodes)
      : adj_(std::move(adj)), n_(adj_.size()), words_((n_ + 63) / 64), stop_above_(stop_above), max_nodes_(max_nodes) {}

  std::vector<std::size_t> run() {
    Bits all(words_, 0);
    for (std::size_t i = 0; i < n_; ++i) set(all, i);
    std::vector<std::size_t> current;
    expand(current, all);
    return best_;
  }

 private:
  void expand(std::vector<std::size_t>& current, Bits candidates) {
    if (++nodes_ > max_nodes_) throw ScaleExceeded("near-covered search exceeded " + std::to_string(max_nodes_) + " nodes");
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    greedy_colour(candidates, order, colour);
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (best_.size() > stop_above_) return;
      if (current.size() + colour[idx] <= best_.size()) return;
      const std::size_t v = order[idx];
      current.push_back(v);
      Bits next(words_);
      for (std::size_t w = 0; w < words_; ++w) next[w] = candidates[w] & adj_[v][w];
      if (empty(next)) {
        if (current.size() > best_.size()) best_ = current;
      } else {
        expand(current, next);
      }
      current.pop_back();
      reset(candidates, v);
    }
  }

  void greedy_colour(const Bits& candidates, std::vector<std::size_t>& order, std::vector<std::size_t>& colour) const {
    Bits uncoloured = candidates;
    std::size_t c = 0;
    while (!empty(uncoloured)) {
      ++c;
      Bits avail = uncoloured;
      for (std::size_t i = 0; i < n_; ++i) {
        if (!test(avail, i)) continue;
        order.push_back(i);
        colour.push_back(c);
        reset(uncoloured, i);
        for (std::size_t w = 0; w < words_; ++w) avail[w] &= ~adj_[i][w];
        reset(avail, i);
      }
    }
  }

  std::vector<Bits> adj_;
  std::size_t n_;
  std::size_t words_;
  std::size_t stop_above_;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> best_;
};

}  // namespace

NearCoveredResult near_covered_check(const Graph& g, std::uint64_t k, std::uint64_t m, CoverMode mode,
                                     const CoverCaps& caps) {
  const std::size_t n = g.num_vertices();
  NearCoveredResult out;
  out.mode = mode;
  auto twins = [&](Vertex a, Vertex b) { return static_cast<std::uint64_t>(symdiff(g, a, b)) <= k; };

  if (mode == CoverMode::kGreedy) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto x = static_cast<Vertex>(v);
      if (std::none_of(out.witness.begin(), out.witness.end(), [&](Vertex y) { return twins(x, y); })) {
        out.witness.push_back(x);
      }
    }
    out.holds = out.witness.size() <= m;
    out.heuristic = out.holds;
    return out;
  }

  if (n > caps.max_vertices) {
    throw ScaleExceeded("exact near-covered check limited to n <= " + std::to_string(caps.max_vertices));
  }
  const std::size_t words = (n + 63) / 64;
  std::vector<Bits> apart(n, Bits(words, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!twins(static_cast<Vertex>(a), static_cast<Vertex>(b))) {
        set(apart[a], b);
        set(apart[b], a);
      }
    }
  }
  const std::size_t stop = m >= n ? n : static_cast<std::size_t>(m);
  auto best = CliqueSearch(std::move(apart), stop, caps.max_nodes).run();
  for (std::size_t v : best) out.witness.push_back(static_cast<Vertex>(v));
  std::sort(out.witness.begin(), out.witness.end());
  out.holds = out.witness.size() <= m;
  return out;
}

LocalCoverResult locally_near_covered_check(const Graph& g, const ParamFunction& kf, const ParamFunction& mf,
                                            std::uint64_t r_max, CoverMode mode, const CoverCaps& caps) {
  const std::size_t n = g.num_vertices();
  LocalCoverResult out;
  const std::uint64_t top = std::min<std::uint64_t>(r_max, n);
  for (std::uint64_t r = 0; r <= top; ++r) {
    const auto m = mf.evaluate(r, n);
    if (!m) continue;
    const std::uint64_t k = kf.evaluate(r, n).value_or(n);
    for (std::size_t v = 0; v < n; ++v) {
      const auto ball = closed_ball(g, static_cast<Vertex>(v), static_cast<int>(r));
      if (ball.size() <= *m) continue;
      const auto sub = induced(g, ball);
      auto res = near_covered_check(sub.graph, k, *m, mode, caps);
      out.heuristic = out.heuristic || res.heuristic;
      if (!res.holds) {
        VertexSet witness;
        for (Vertex x : res.witness) witness.push_back(sub.original[static_cast<std::size_t>(x)]);
        out.holds = false;
        out.failure = LocalCoverCertificate{r, static_cast<Vertex>(v), std::move(witness)};
        return out;
      }
    }
  }
  return out;
}

std::uint64_t no_ladder_bound(std::uint64_t k2, std::uint64_t m2) {
  std::uint64_t t = 0;
  if (__builtin_mul_overflow(m2, k2, &t) || __builtin_add_overflow(t, m2, &t) || __builtin_add_overflow(t, 1, &t)) {
    throw std::overflow_error("no_ladder_bound overflows 64 bits");
  }
  return t;
}

}  // namespace treerank
