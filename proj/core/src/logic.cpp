#include "treerank/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "treerank/graph_ops.hpp"

namespace treerank {

struct Formula::Node {
  FormulaKind kind;
  std::string name;
  std::vector<std::string> vars;
  std::vector<Formula> children;
};

namespace {

void require_variable(const std::string& v) {
  if (v.empty() || v.find_first_of("() \t\n") != std::string::npos) {
    throw std::invalid_argument("invalid variable name '" + v + "'");
  }
}

}  // namespace

Formula Formula::truth() { return Formula(std::make_shared<const Node>(Node{FormulaKind::kTrue, {}, {}, {}})); }
Formula Formula::falsity() { return Formula(std::make_shared<const Node>(Node{FormulaKind::kFalse, {}, {}, {}})); }

Formula Formula::edge(std::string x, std::string y) {
  require_variable(x);
  require_variable(y);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kEdge, {}, {std::move(x), std::move(y)}, {}}));
}

Formula Formula::predicate(std::string name, std::string x) {
  require_variable(name);
  require_variable(x);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kPredicate, std::move(name), {std::move(x)}, {}}));
}

Formula Formula::equal(std::string x, std::string y) {
  require_variable(x);
  require_variable(y);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kEqual, {}, {std::move(x), std::move(y)}, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kNot, {}, {}, {std::move(f)}}));
}

Formula Formula::conjunction(std::vector<Formula> fs) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kAnd, {}, {}, std::move(fs)}));
}

Formula Formula::disjunction(std::vector<Formula> fs) {
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kOr, {}, {}, std::move(fs)}));
}

Formula Formula::exists(std::string var, Formula body) {
  require_variable(var);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kExists, {}, {std::move(var)}, {std::move(body)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  require_variable(var);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::kForall, {}, {std::move(var)}, {std::move(body)}}));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<std::string>& Formula::variables() const { return node_->vars; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

std::set<std::string> Formula::free_variables() const {
  switch (kind()) {
    case FormulaKind::kTrue:
    case FormulaKind::kFalse: return {};
    case FormulaKind::kEdge:
    case FormulaKind::kPredicate:
    case FormulaKind::kEqual: return {variables().begin(), variables().end()};
    case FormulaKind::kNot:
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::set<std::string> out;
      for (const auto& c : children()) {
        auto sub = c.free_variables();
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall: {
      auto out = children().front().free_variables();
      out.erase(variables().front());
      return out;
    }
  }
  return {};
}

int Formula::quantifier_depth() const {
  int depth = 0;
  for (const auto& c : children()) depth = std::max(depth, c.quantifier_depth());
  if (kind() == FormulaKind::kExists || kind() == FormulaKind::kForall) ++depth;
  return depth;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case FormulaKind::kTrue: return "true";
    case FormulaKind::kFalse: return "false";
    case FormulaKind::kEdge: return "(E " + variables()[0] + " " + variables()[1] + ")";
    case FormulaKind::kPredicate: return "(P " + name() + " " + variables()[0] + ")";
    case FormulaKind::kEqual: return "(= " + variables()[0] + " " + variables()[1] + ")";
    case FormulaKind::kNot: return "(not " + children()[0].to_string() + ")";
    case FormulaKind::kAnd:
    case FormulaKind::kOr: {
      std::string out = kind() == FormulaKind::kAnd ? "(and" : "(or";
      for (const auto& c : children()) out += " " + c.to_string();
      return out + ")";
    }
    case FormulaKind::kExists:
    case FormulaKind::kForall:
      return std::string(kind() == FormulaKind::kExists ? "(exists " : "(forall ") + variables()[0] + " " +
             children()[0].to_string() + ")";
  }
  return "?";
}

namespace {

class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("formula parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_close() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ')';
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string token() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    if (start == pos_) fail("expected a token");
    return std::string(text_.substr(start, pos_ - start));
  }

  Formula parse_formula() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] != '(') {
      auto word = token();
      if (word == "true") return Formula::truth();
      if (word == "false") return Formula::falsity();
      fail("unexpected atom '" + word + "'");
    }
    expect('(');
    auto head = token();
    Formula out = Formula::truth();
    if (head == "E") {
      auto x = token();
      auto y = token();
      out = Formula::edge(x, y);
    } else if (head == "P") {
      auto name = token();
      auto x = token();
      out = Formula::predicate(name, x);
    } else if (head == "=") {
      auto x = token();
      auto y = token();
      out = Formula::equal(x, y);
    } else if (head == "not") {
      out = Formula::negation(parse_formula());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> parts;
      while (!peek_close()) parts.push_back(parse_formula());
      out = head == "and" ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    } else if (head == "exists" || head == "forall") {
      auto var = token();
      auto body = parse_formula();
      out = head == "exists" ? Formula::exists(var, body) : Formula::forall(var, body);
    } else {
      fail("unknown head '" + head + "'");
    }
    expect(')');
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Evaluator {
 public:
  explicit Evaluator(const Graph& g) : g_(g) {}

  void bind(std::string_view var, Vertex v) { env_.emplace_back(var, v); }

  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::kTrue: return true;
      case FormulaKind::kFalse: return false;
      case FormulaKind::kEdge: {
        Vertex u = lookup(f.variables()[0]);
        Vertex v = lookup(f.variables()[1]);
        return u != v && g_.adjacent(u, v);
      }
      case FormulaKind::kPredicate: return g_.has_label(f.name(), lookup(f.variables()[0]));
      case FormulaKind::kEqual: return lookup(f.variables()[0]) == lookup(f.variables()[1]);
      case FormulaKind::kNot: return !eval(f.children()[0]);
      case FormulaKind::kAnd:
        return std::all_of(f.children().begin(), f.children().end(), [this](const Formula& c) { return eval(c); });
      case FormulaKind::kOr:
        return std::any_of(f.children().begin(), f.children().end(), [this](const Formula& c) { return eval(c); });
      case FormulaKind::kExists:
      case FormulaKind::kForall: {
        const bool want = f.kind() == FormulaKind::kExists;
        env_.emplace_back(f.variables()[0], 0);
        bool result = !want;
        for (std::size_t v = 0; v < g_.num_vertices(); ++v) {
          env_.back().second = static_cast<Vertex>(v);
          if (eval(f.children()[0]) == want) {
            result = want;
            break;
          }
        }
        env_.pop_back();
        return result;
      }
    }
    return false;
  }

 private:
  Vertex lookup(const std::string& var) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == var) return it->second;
    }
    throw std::invalid_argument("unbound free variable '" + var + "'");
  }

  const Graph& g_;
  std::vector<std::pair<std::string_view, Vertex>> env_;
};

void require_free_within(const Formula& f, const std::set<std::string>& allowed, const char* what) {
  for (const auto& v : f.free_variables()) {
    if (!allowed.contains(v)) throw std::invalid_argument(std::string(what) + " has unexpected free variable '" + v + "'");
  }
}

}  // namespace

Formula Formula::parse(std::string_view text) { return SexprParser(text).parse_all(); }

Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
Formula operator&&(Formula a, Formula b) { return Formula::conjunction({std::move(a), std::move(b)}); }
Formula operator||(Formula a, Formula b) { return Formula::disjunction({std::move(a), std::move(b)}); }

bool evaluate(const Graph& g, const Formula& f, const Assignment& assignment) {
  for (const auto& var : f.free_variables()) {
    auto it = assignment.find(var);
    if (it == assignment.end()) throw std::invalid_argument("unbound free variable '" + var + "'");
    if (!g.valid(it->second)) throw std::invalid_argument("variable '" + var + "' assigned to an invalid vertex");
  }
  Evaluator ev(g);
  for (const auto& [var, v] : assignment) ev.bind(var, v);
  return ev.eval(f);
}

Interpretation::Interpretation(Formula psi_formula, Formula delta_formula)
    : psi(std::move(psi_formula)), delta(std::move(delta_formula)) {
  require_free_within(psi, {"x", "y"}, "psi");
  require_free_within(delta, {"x"}, "delta");
}

InterpretationResult apply_interpretation(const Graph& g, const Interpretation& interp) {
  VertexSet kept;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    Evaluator ev(g);
    ev.bind("x", static_cast<Vertex>(v));
    if (ev.eval(interp.delta)) kept.push_back(static_cast<Vertex>(v));
  }
  auto base = induced(g, kept);
  GraphBuilder builder(base.graph.num_vertices());
  for (const auto& [name, members] : base.graph.predicates()) builder.set_predicate(name, members);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      Evaluator forward(g);
      forward.bind("x", kept[i]);
      forward.bind("y", kept[j]);
      bool related = forward.eval(interp.psi);
      if (!related) {
        Evaluator backward(g);
        backward.bind("x", kept[j]);
        backward.bind("y", kept[i]);
        related = backward.eval(interp.psi);
      }
      if (related) builder.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  }
  return {std::move(builder).build(), std::move(kept)};
}

bool check_range(const Graph& g, const Formula& psi, int b) {
  if (b < 0) throw std::invalid_argument("check_range: negative range");
  require_free_within(psi, {"x", "y"}, "psi");
  for (std::size_t u = 0; u < g.num_vertices(); ++u) {
    const auto dist = distances_from(g, static_cast<Vertex>(u));
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (u == v || dist[v] <= b) continue;
      Evaluator ev(g);
      ev.bind("x", static_cast<Vertex>(u));
      ev.bind("y", static_cast<Vertex>(v));
      if (ev.eval(psi)) return false;
    }
  }
  return true;
}

Interpretation recovery_interpretation() {
  using F = Formula;
  // shared apex w marked R and F
  F self_flip = F::exists("w", F::conjunction({F::predicate("R", "w"), F::predicate("F", "w"), F::edge("x", "w"),
                                                F::edge("y", "w")}));
  // distinct adjacent apexes a ~ x, b ~ y
  F cross_flip = F::exists(
      "a", F::conjunction({F::predicate("R", "a"), F::edge("x", "a"),
                           F::exists("b", F::conjunction({F::predicate("R", "b"), !F::equal("a", "b"),
                                                          F::edge("y", "b"), F::edge("a", "b")}))}));
  F complemented = self_flip || cross_flip;
  F psi = F::conjunction({!F::equal("x", "y"), (F::edge("x", "y") && !complemented) ||
                                                   (!F::edge("x", "y") && complemented)});
  F delta = !F::predicate("R", "x");
  return Interpretation(psi, delta);
}

}  // namespace treerank
