#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "treerank/graph.hpp"

namespace treerank {

enum class FormulaKind { kTrue, kFalse, kEdge, kPredicate, kEqual, kNot, kAnd, kOr, kExists, kForall };

/// First-order formula over the graph signature {E} plus unary predicates.
/// Immutable and cheap to copy (shared subtrees).
///
/// Text form is a prefix s-expression:
///
///   f := true | false
///      | (E v v) | (P name v) | (= v v)
///      | (not f) | (and f ...) | (or f ...)
///      | (exists v f) | (forall v f)
///
/// Variables and predicate names are bare tokens without whitespace or
/// parentheses. (and) is true, (or) is false.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula edge(std::string x, std::string y);
  static Formula predicate(std::string name, std::string x);
  static Formula equal(std::string x, std::string y);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> fs);
  static Formula disjunction(std::vector<Formula> fs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  /// Throws std::invalid_argument with the offending position.
  static Formula parse(std::string_view text);

  FormulaKind kind() const;
  /// Predicate name for kPredicate, empty otherwise.
  const std::string& name() const;
  /// Atom arguments, or the single bound variable of a quantifier.
  const std::vector<std::string>& variables() const;
  const std::vector<Formula>& children() const;

  std::set<std::string> free_variables() const;
  int quantifier_depth() const;
  std::string to_string() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula operator!(Formula f);
Formula operator&&(Formula a, Formula b);
Formula operator||(Formula a, Formula b);

using Assignment = std::map<std::string, Vertex, std::less<>>;

/// Tarskian semantics by direct recursive enumeration; O(n^depth).
/// Unknown predicate names are empty. Throws std::invalid_argument when a
/// free variable is missing from the assignment.
bool evaluate(const Graph& g, const Formula& f, const Assignment& assignment);

/// Simple interpretation (psi(x, y), delta(x)).
struct Interpretation {
  Formula psi;
  Formula delta;

  /// Checks psi's free variables are within {x, y} and delta's within {x}.
  Interpretation(Formula psi_formula, Formula delta_formula);
};

struct InterpretationResult {
  Graph graph;
  /// original[i] is the source vertex of output vertex i.
  std::vector<Vertex> original;
};

/// I(G). Vertices are the delta-satisfying vertices (ids remapped densely,
/// order kept). uv is an edge iff u != v and psi(u, v) or psi(v, u) holds,
/// so the output is simple even for asymmetric psi. Predicates are carried
/// over restricted to the kept vertices.
InterpretationResult apply_interpretation(const Graph& g, const Interpretation& interp);

/// True iff no ordered pair (u, v) with dist(u, v) > b satisfies psi(u, v).
/// psi must have free variables within {x, y}.
bool check_range(const Graph& g, const Formula& psi, int b);

/// The fixed interpretation recovering G from its sparsification:
///   psi(x, y) = not x = y and (E(x, y) xor C(x, y)), where C holds when
///     x and y share a neighbour marked R and F, or
///     x and y have distinct adjacent neighbours both marked R;
///   delta(x) = not R(x).
Interpretation recovery_interpretation();

}  // namespace treerank
