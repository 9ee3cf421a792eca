#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treerank/graph.hpp"
#include "treerank/graph_ops.hpp"
#include "treerank/labd.hpp"

namespace treerank {

/// Connected components of NT_k(G), sorted by smallest member.
struct PartPartition {
  int k = 0;
  std::vector<VertexSet> parts;
  std::vector<int> part_of;
};

PartPartition component_partition(const Graph& g, int k);

using PartPair = std::pair<int, int>;  // first <= second

struct HeavyClassification {
  std::uint64_t h = 1;
  /// Sorted part indices occurring in some mutually heavy pair.
  std::vector<int> heavy;
  /// Sorted unordered pairs; (a, a) marks a part heavy with itself.
  std::vector<PartPair> mutually_heavy;
};

/// Parts A, B (possibly equal) with |A|, |B| >= 5h + 1 are mutually heavy
/// when some vertex of one has more than 2h neighbours in the other.
/// Either direction qualifies. Throws std::invalid_argument if h < 1.
HeavyClassification classify_heavy(const Graph& g, const PartPartition& p, std::uint64_t h);

/// Indices of parts containing a vertex of degree <= h.
std::vector<int> light_parts(const Graph& g, const PartPartition& p, std::uint64_t h);

enum class Density { kSparse, kDense, kMixed };

const char* to_string(Density d);

struct DensityReport {
  Density verdict = Density::kMixed;
  /// |A|, |B| >= 5k + 1, A and B disjoint or equal, each side pairwise
  /// k-near-twins.
  bool preconditions_hold = false;
};

/// Sparse: every vertex on either side has at most 2k neighbours on the
/// other. Dense: every vertex misses at most 2k vertices of the other side
/// (itself excluded when A = B). Sparse is tested first.
DensityReport pair_density(const Graph& g, const VertexSet& a, const VertexSet& b, std::uint64_t k);

/// S(G): heavy pairs flipped, one apex per heavy part (predicate R,
/// adjacent to the part), F on apexes of self-flipped parts, an edge
/// between the apexes of every flipped pair of distinct parts.
struct SparsifiedGraph {
  Graph graph;
  std::size_t original_n = 0;
  PartPartition partition;
  HeavyClassification classification;
  /// (part index, apex vertex), ascending part index; apex ids start at
  /// original_n.
  std::vector<std::pair<int, Vertex>> apex;
  std::vector<PartPair> flipped_pairs;
};

inline constexpr const char* kApexPredicate = "R";
inline constexpr const char* kSelfFlipPredicate = "F";

/// Throws std::invalid_argument if h < 1, k < 0, or g already carries a
/// predicate named R or F.
SparsifiedGraph build_sparsifier(const Graph& g, int k, std::uint64_t h);

/// First broken structural invariant of a sparsified graph, if any.
std::optional<std::string> validate_sparsified(const SparsifiedGraph& sg);

/// Graph on the vertices without R, with adjacency complemented between
/// x and y when they share an R-and-F neighbour, or when their distinct R
/// neighbours are adjacent. Throws InvariantViolation if a vertex has two
/// R neighbours.
Graph recover(const Graph& sparsified);
Graph recover(const SparsifiedGraph& sg);

/// G/F on part indices: A ~ B (A != B) iff some edge joins them.
Graph quotient_graph(const Graph& g, const PartPartition& p);

/// h = h(k3, t) with t = m2 * k2 + m2 + 1.
std::uint64_t class_h(std::uint64_t k3, std::uint64_t k2, std::uint64_t m2);

/// s = 5h * m3 + 1, the side of the complete bipartite subgraph excluded
/// from S(G) for class members.
std::uint64_t kss_bound(std::uint64_t h, std::uint64_t m3);

struct SflipCaps {
  std::size_t max_vertices = 32;
  std::uint64_t max_candidates = 1'000'000;
};

struct SflipResult {
  VertexSet s;
  std::vector<ClassPair> flips;
  Graph flipped;
  SparsifiedGraph sparsified;
  /// Candidates examined up to and including the returned one.
  std::uint64_t examined = 0;
};

/// Enumerates S with |S| <= s in colexicographic order and, per S, every
/// set of F_S class pairs (i <= j, lexicographic) as a binary counter,
/// bit 0 being the first pair. Returns the first candidate G' whose
/// sparsification passes labd_check(verifier) and recovers G' exactly.
/// The total candidate count is checked against the caps before any work
/// (ScaleExceeded).
std::optional<SflipResult> sflip_driver(const Graph& g, int s, int k, std::uint64_t h, const LabdSpec& verifier,
                                        const SflipCaps& caps = {});

}  // namespace treerank
