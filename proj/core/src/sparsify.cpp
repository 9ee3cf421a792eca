#include "treerank/sparsify.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "treerank/errors.hpp"
#include "treerank/neartwin.hpp"

namespace treerank {

PartPartition component_partition(const Graph& g, int k) {
  PartPartition p;
  p.k = k;
  p.parts = neartwin_components(g, k);
  p.part_of.assign(g.num_vertices(), -1);
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    for (Vertex v : p.parts[i]) p.part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  return p;
}

HeavyClassification classify_heavy(const Graph& g, const PartPartition& p, std::uint64_t h) {
  if (h < 1) throw std::invalid_argument("classify_heavy requires h >= 1");
  if (p.part_of.size() != g.num_vertices()) throw std::invalid_argument("partition does not match the graph");
  HeavyClassification out;
  out.h = h;
  const std::uint64_t min_size = 5 * h + 1;
  auto big = [&](int part) { return p.parts[static_cast<std::size_t>(part)].size() >= min_size; };

  std::vector<std::uint64_t> count(p.parts.size(), 0);
  std::vector<int> touched;
  std::vector<PartPair> pairs;
  for (std::size_t b = 0; b < p.parts.size(); ++b) {
    if (!big(static_cast<int>(b))) continue;
    for (Vertex v : p.parts[b]) {
      for (Vertex w : g.neighbors(v)) {
        const int a = p.part_of[static_cast<std::size_t>(w)];
        if (!big(a)) continue;
        if (count[static_cast<std::size_t>(a)]++ == 0) touched.push_back(a);
      }
      for (int a : touched) {
        if (count[static_cast<std::size_t>(a)] > 2 * h) {
          pairs.emplace_back(std::min(a, static_cast<int>(b)), std::max(a, static_cast<int>(b)));
        }
        count[static_cast<std::size_t>(a)] = 0;
      }
      touched.clear();
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  out.mutually_heavy = std::move(pairs);
  for (const auto& [a, b] : out.mutually_heavy) {
    out.heavy.push_back(a);
    out.heavy.push_back(b);
  }
  std::sort(out.heavy.begin(), out.heavy.end());
  out.heavy.erase(std::unique(out.heavy.begin(), out.heavy.end()), out.heavy.end());
  return out;
}

std::vector<int> light_parts(const Graph& g, const PartPartition& p, std::uint64_t h) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    if (std::any_of(part.begin(), part.end(), [&](Vertex v) { return g.degree(v) <= h; })) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

const char* to_string(Density d) {
  switch (d) {
    case Density::kSparse:
      return "sparse";
    case Density::kDense:
      return "dense";
    case Density::kMixed:
      return "mixed";
  }
  return "?";
}

namespace {

std::size_t neighbours_in(const Graph& g, Vertex v, const VertexSet& set) {
  return static_cast<std::size_t>(std::count_if(set.begin(), set.end(), [&](Vertex x) { return g.adjacent(v, x); }));
}

bool pairwise_twins(const Graph& g, const VertexSet& set, std::uint64_t k) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (static_cast<std::uint64_t>(symdiff(g, set[i], set[j])) > k) return false;
    }
  }
  return true;
}

}  // namespace

DensityReport pair_density(const Graph& g, const VertexSet& a, const VertexSet& b, std::uint64_t k) {
  const bool same = a == b;
  if (!same) {
    VertexSet common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (!common.empty()) throw std::invalid_argument("pair_density: sets must be disjoint or equal");
  }
  DensityReport out;
  out.preconditions_hold = a.size() >= 5 * k + 1 && b.size() >= 5 * k + 1 && pairwise_twins(g, a, k) &&
                           (same || pairwise_twins(g, b, k));

  auto all_sides = [&](auto&& ok) {
    return std::all_of(a.begin(), a.end(), [&](Vertex v) { return ok(v, b); }) &&
           std::all_of(b.begin(), b.end(), [&](Vertex v) { return ok(v, a); });
  };
  const bool sparse = all_sides([&](Vertex v, const VertexSet& other) { return neighbours_in(g, v, other) <= 2 * k; });
  if (sparse) {
    out.verdict = Density::kSparse;
    return out;
  }
  const bool dense = all_sides([&](Vertex v, const VertexSet& other) {
    const std::size_t others = other.size() - (contains(other, v) ? 1 : 0);
    return others - neighbours_in(g, v, other) <= 2 * k;
  });
  out.verdict = dense ? Density::kDense : Density::kMixed;
  return out;
}

SparsifiedGraph build_sparsifier(const Graph& g, int k, std::uint64_t h) {
  if (k < 0) throw std::invalid_argument("build_sparsifier requires k >= 0");
  if (h < 1) throw std::invalid_argument("build_sparsifier requires h >= 1");
  if (g.predicates().count(kApexPredicate) || g.predicates().count(kSelfFlipPredicate)) {
    throw std::invalid_argument("input graph already uses the reserved predicates R or F");
  }
  SparsifiedGraph sg;
  sg.original_n = g.num_vertices();
  sg.partition = component_partition(g, k);
  sg.classification = classify_heavy(g, sg.partition, h);
  sg.flipped_pairs = sg.classification.mutually_heavy;

  GraphBuilder builder(g);
  for (const auto& [a, b] : sg.flipped_pairs) {
    builder.toggle_between(sg.partition.parts[static_cast<std::size_t>(a)],
                           sg.partition.parts[static_cast<std::size_t>(b)]);
  }
  std::map<int, Vertex> apex_of;
  for (int part : sg.classification.heavy) {
    const Vertex apex = builder.add_vertex();
    apex_of[part] = apex;
    sg.apex.emplace_back(part, apex);
    for (Vertex v : sg.partition.parts[static_cast<std::size_t>(part)]) builder.add_edge(apex, v);
    builder.add_label(kApexPredicate, apex);
  }
  for (const auto& [a, b] : sg.flipped_pairs) {
    if (a == b) {
      builder.add_label(kSelfFlipPredicate, apex_of.at(a));
    } else {
      builder.add_edge(apex_of.at(a), apex_of.at(b));
    }
  }
  sg.graph = std::move(builder).build();
  return sg;
}

std::optional<std::string> validate_sparsified(const SparsifiedGraph& sg) {
  const Graph& g = sg.graph;
  if (g.num_vertices() != sg.original_n + sg.apex.size()) return "vertex count does not match apex count";
  std::vector<int> part_of_apex(g.num_vertices(), -1);
  for (std::size_t i = 0; i < sg.apex.size(); ++i) {
    const auto [part, v] = sg.apex[i];
    if (static_cast<std::size_t>(v) != sg.original_n + i) return "apex ids must follow the original vertices";
    part_of_apex[static_cast<std::size_t>(v)] = part;
  }
  const VertexSet& r = g.predicate(kApexPredicate);
  VertexSet apexes;
  for (const auto& entry : sg.apex) apexes.push_back(entry.second);
  if (r != apexes) return "R must mark exactly the apex vertices";
  for (Vertex f : g.predicate(kSelfFlipPredicate)) {
    if (!contains(r, f)) return "F vertex " + std::to_string(f) + " is not marked R";
  }
  for (const auto& [part, v] : sg.apex) {
    VertexSet originals;
    VertexSet apex_nbrs;
    for (Vertex w : g.neighbors(v)) {
      (static_cast<std::size_t>(w) < sg.original_n ? originals : apex_nbrs).push_back(w);
    }
    if (originals != sg.partition.parts[static_cast<std::size_t>(part)]) {
      return "apex " + std::to_string(v) + " is not adjacent exactly to its part";
    }
    for (Vertex w : apex_nbrs) {
      const int other = part_of_apex[static_cast<std::size_t>(w)];
      const PartPair key{std::min(part, other), std::max(part, other)};
      if (!std::binary_search(sg.flipped_pairs.begin(), sg.flipped_pairs.end(), key)) {
        return "apex edge " + std::to_string(v) + "-" + std::to_string(w) + " without a flipped pair";
      }
    }
    const bool self_flip = std::binary_search(sg.flipped_pairs.begin(), sg.flipped_pairs.end(), PartPair{part, part});
    if (self_flip != g.has_label(kSelfFlipPredicate, v)) return "F mark of apex " + std::to_string(v) + " is wrong";
  }
  for (const auto& [a, b] : sg.flipped_pairs) {
    if (a == b) continue;
    Vertex va = -1, vb = -1;
    for (const auto& [part, v] : sg.apex) {
      if (part == a) va = v;
      if (part == b) vb = v;
    }
    if (va < 0 || vb < 0 || !g.adjacent(va, vb)) return "flipped pair without an apex edge";
  }
  for (std::size_t v = 0; v < sg.original_n; ++v) {
    std::size_t count = 0;
    for (Vertex w : g.neighbors(static_cast<Vertex>(v))) count += contains(r, w) ? 1 : 0;
    if (count > 1) return "vertex " + std::to_string(v) + " has " + std::to_string(count) + " R neighbours";
  }
  return std::nullopt;
}

Graph recover(const Graph& sparsified) {
  const VertexSet& r = sparsified.predicate(kApexPredicate);
  VertexSet keep;
  for (std::size_t v = 0; v < sparsified.num_vertices(); ++v) {
    if (!contains(r, static_cast<Vertex>(v))) keep.push_back(static_cast<Vertex>(v));
  }
  // members[a] = new ids of kept vertices whose R neighbour is a
  std::map<Vertex, VertexSet> members;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Vertex apex = -1;
    for (Vertex w : sparsified.neighbors(keep[i])) {
      if (!contains(r, w)) continue;
      if (apex >= 0) {
        throw InvariantViolation("vertex " + std::to_string(keep[i]) + " has more than one R neighbour");
      }
      apex = w;
    }
    if (apex >= 0) members[apex].push_back(static_cast<Vertex>(i));
  }
  const auto base = induced(sparsified, keep);
  GraphBuilder builder(base.graph);
  for (const auto& [a, group_a] : members) {
    if (sparsified.has_label(kSelfFlipPredicate, a)) builder.toggle_between(group_a, group_a);
    for (const auto& [b, group_b] : members) {
      if (a < b && sparsified.adjacent(a, b)) builder.toggle_between(group_a, group_b);
    }
  }
  return std::move(builder).build();
}

Graph recover(const SparsifiedGraph& sg) { return recover(sg.graph); }

Graph quotient_graph(const Graph& g, const PartPartition& p) {
  if (p.part_of.size() != g.num_vertices()) throw std::invalid_argument("partition does not match the graph");
  GraphBuilder builder(p.parts.size());
  for (const auto& [u, v] : g.edges()) {
    const int a = p.part_of[static_cast<std::size_t>(u)];
    const int b = p.part_of[static_cast<std::size_t>(v)];
    if (a != b) builder.add_edge(a, b);
  }
  return std::move(builder).build();
}

std::uint64_t class_h(std::uint64_t k3, std::uint64_t k2, std::uint64_t m2) {
  const std::uint64_t t = no_ladder_bound(k2, m2);
  if (t > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) throw std::overflow_error("t too large");
  return h_bound(k3, static_cast<int>(t));
}

std::uint64_t kss_bound(std::uint64_t h, std::uint64_t m3) {
  std::uint64_t s = 0;
  if (__builtin_mul_overflow(5 * h, m3, &s) || __builtin_add_overflow(s, 1, &s)) {
    throw std::overflow_error("kss_bound overflows 64 bits");
  }
  return s;
}

namespace {

// Subsets of {0..limit-1} with at most `budget` elements, joined with
// `suffix`, in colexicographic order.
void colex_subsets(int limit, int budget, VertexSet& suffix, const std::function<bool(const VertexSet&)>& visit,
                   bool& stop) {
  if (stop) return;
  if (visit(suffix)) {
    stop = true;
    return;
  }
  if (budget == 0) return;
  for (int top = 0; top < limit && !stop; ++top) {
    suffix.insert(suffix.begin(), top);
    colex_subsets(top, budget - 1, suffix, visit, stop);
    suffix.erase(suffix.begin());
  }
}

std::vector<ClassPair> class_pairs(std::size_t classes) {
  std::vector<ClassPair> pairs;
  for (std::size_t i = 0; i < classes; ++i) {
    for (std::size_t j = i; j < classes; ++j) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return pairs;
}

}  // namespace

std::optional<SflipResult> sflip_driver(const Graph& g, int s, int k, std::uint64_t h, const LabdSpec& verifier,
                                        const SflipCaps& caps) {
  if (s < 0) throw std::invalid_argument("sflip_driver requires s >= 0");
  const std::size_t n = g.num_vertices();
  if (n > caps.max_vertices) throw ScaleExceeded("S-flip search limited to n <= " + std::to_string(caps.max_vertices));
  const int budget = std::min<int>(s, static_cast<int>(n));

  std::uint64_t total = 0;
  bool stop = false;
  VertexSet scratch;
  colex_subsets(static_cast<int>(n), budget, scratch, [&](const VertexSet& set) {
    const auto pairs = class_pairs(sflip_classes(g, set).size()).size();
    if (pairs >= 63 || total + (std::uint64_t{1} << pairs) > caps.max_candidates) {
      total = caps.max_candidates + 1;
      return true;
    }
    total += std::uint64_t{1} << pairs;
    return false;
  }, stop);
  if (total > caps.max_candidates) {
    throw ScaleExceeded("S-flip search needs more than " + std::to_string(caps.max_candidates) + " candidates");
  }

  std::optional<SflipResult> found;
  std::uint64_t examined = 0;
  stop = false;
  scratch.clear();
  colex_subsets(static_cast<int>(n), budget, scratch, [&](const VertexSet& set) {
    const auto pairs = class_pairs(sflip_classes(g, set).size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      ++examined;
      std::vector<ClassPair> flips;
      for (std::size_t bit = 0; bit < pairs.size(); ++bit) {
        if ((mask >> bit) & 1u) flips.push_back(pairs[bit]);
      }
      Graph flipped = s_flip(g, set, flips);
      SparsifiedGraph sg = build_sparsifier(flipped, k, h);
      if (!labd_check(sg.graph, verifier).holds) continue;
      if (recover(sg) != flipped) continue;
      found = SflipResult{set, std::move(flips), std::move(flipped), std::move(sg), examined};
      return true;
    }
    return false;
  }, stop);
  return found;
}

}  // namespace treerank
