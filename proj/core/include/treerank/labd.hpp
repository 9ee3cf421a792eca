#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "treerank/graph.hpp"

namespace treerank {

/// A function r -> h(r) evaluated against a budget n: evaluate(r, n)
/// returns h(r) when h(r) <= n and nullopt when h(r) > n.
///
/// Text forms:
///   const:c        h(r) = c
///   linear:a,b     h(r) = a*r + b
///   exp2           h(r) = 2^r
///   tower          h(0) = 1, h(r) = 2^h(r-1)
///   table:<file>   one "r value" or "r over" line per r = 0, 1, 2, ...
///                  ('#' comments); r past the last line reuses it
class ParamFunction {
 public:
  enum class Kind { kConstant, kLinear, kExp2, kTower, kTable };

  static ParamFunction constant(std::uint64_t c);
  static ParamFunction linear(std::uint64_t a, std::uint64_t b);
  static ParamFunction exp2();
  static ParamFunction tower();
  /// entries[r]; nullopt marks "exceeds every budget".
  static ParamFunction table(std::vector<std::optional<std::uint64_t>> entries);

  /// Parses the text form; table files are read from disk. Throws
  /// std::invalid_argument on malformed input.
  static ParamFunction parse(std::string_view spec);
  static ParamFunction parse_table(std::istream& in);

  std::optional<std::uint64_t> evaluate(std::uint64_t r, std::uint64_t n) const;
  Kind kind() const { return kind_; }
  std::string to_string() const;

 private:
  ParamFunction(Kind kind, std::uint64_t a, std::uint64_t b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  std::uint64_t a_ = 0;
  std::uint64_t b_ = 0;
  std::vector<std::optional<std::uint64_t>> table_;
};

/// Locally almost bounded degree with parameters f (exceptions) and d
/// (degree threshold).
struct LabdSpec {
  ParamFunction f;
  ParamFunction d;
};

struct LabdCertificate {
  std::uint64_t r = 0;
  Vertex v = -1;
  /// Vertices of degree > d(r) in the r-ball around v.
  VertexSet offending;
};

struct LabdResult {
  bool holds = true;
  std::optional<LabdCertificate> failure;
};

/// For r = 0..n (skipping r with f(r) > n or d(r) > n): every r-ball has
/// at most f(r) vertices of degree > d(r). Reports the first failure in
/// (r, v) order.
LabdResult labd_check(const Graph& g, const LabdSpec& spec);

enum class CoverMode { kExact, kGreedy };

struct CoverCaps {
  std::size_t max_vertices = 256;
  std::uint64_t max_nodes = 20'000'000;
};

struct NearCoveredResult {
  bool holds = true;
  /// Greedy "true" verdicts are not proofs.
  bool heuristic = false;
  CoverMode mode = CoverMode::kExact;
  /// Pairwise non-k-near-twins: larger than m when holds is false; in exact
  /// mode a maximum such set when holds is true.
  VertexSet witness;
};

/// (k, m)-near-covered: every set of pairwise non-k-near-twins has at most
/// m vertices. Exact mode solves maximum independent set in NT_k(G) by
/// branch and bound (throws ScaleExceeded past caps); greedy mode keeps
/// the smallest id that is not a k-near-twin of anything kept so far.
NearCoveredResult near_covered_check(const Graph& g, std::uint64_t k, std::uint64_t m,
                                     CoverMode mode = CoverMode::kExact, const CoverCaps& caps = {});

struct LocalCoverCertificate {
  std::uint64_t r = 0;
  Vertex v = -1;
  /// Original ids of the pairwise non-near-twins inside the r-ball.
  VertexSet witness;
};

struct LocalCoverResult {
  bool holds = true;
  bool heuristic = false;
  std::optional<LocalCoverCertificate> failure;
};

/// For r = 0..r_max and every v: the subgraph induced on the r-ball is
/// (k(r), m(r))-near-covered. r with m(r) > n pass trivially; k(r) > n is
/// evaluated as k = n, which already makes every pair in a ball a
/// near-twin. Checking only up to r_max is weaker than the full condition.
LocalCoverResult locally_near_covered_check(const Graph& g, const ParamFunction& kf, const ParamFunction& mf,
                                            std::uint64_t r_max, CoverMode mode = CoverMode::kExact,
                                            const CoverCaps& caps = {});

/// t = m2 * k2 + m2 + 1. Throws std::overflow_error past 64 bits.
std::uint64_t no_ladder_bound(std::uint64_t k2, std::uint64_t m2);

}  // namespace treerank
