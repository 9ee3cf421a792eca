#include "treerank/graph_io.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "treerank/errors.hpp"

namespace treerank {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::optional<long long> to_integer(std::string_view token) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::optional<GraphBuilder> builder;
  std::size_t declared_edges = 0;
  std::size_t seen_edges = 0;
  std::size_t n = 0;
  std::size_t line_no = 0;
  std::string raw;

  auto vertex = [&](std::string_view token) -> Vertex {
    auto value = to_integer(token);
    if (!value) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad vertex id '" + std::string(token) + "'");
    if (*value < 0 || static_cast<unsigned long long>(*value) >= n) {
      throw ParseError(ParseErrorKind::kVertexOutOfRange, line_no, std::string(token));
    }
    return static_cast<Vertex>(*value);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;

    const std::string_view directive = tokens[0];
    if (directive == "p") {
      if (builder) throw ParseError(ParseErrorKind::kDuplicateHeader, line_no, "");
      if (tokens.size() != 3) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'p <n> <m>'");
      auto nv = to_integer(tokens[1]);
      auto mv = to_integer(tokens[2]);
      if (!nv || !mv || *nv < 0 || *mv < 0) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad header counts");
      n = static_cast<std::size_t>(*nv);
      declared_edges = static_cast<std::size_t>(*mv);
      builder.emplace(n);
      continue;
    }
    if (!builder) throw ParseError(ParseErrorKind::kMissingHeader, line_no, "");

    if (directive == "e") {
      if (tokens.size() != 3) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'e <u> <v>'");
      Vertex u = vertex(tokens[1]);
      Vertex v = vertex(tokens[2]);
      if (u == v) throw ParseError(ParseErrorKind::kSelfLoop, line_no, std::to_string(u));
      if (!builder->add_edge(u, v)) {
        throw ParseError(ParseErrorKind::kDuplicateEdge, line_no, std::to_string(u) + " " + std::to_string(v));
      }
      ++seen_edges;
    } else if (directive == "l") {
      if (tokens.size() < 2) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'l <name> ...'");
      const std::string name(tokens[1]);
      for (std::size_t i = 2; i < tokens.size(); ++i) builder->add_label(name, vertex(tokens[i]));
    } else {
      throw ParseError(ParseErrorKind::kUnknownDirective, line_no, std::string(directive));
    }
  }

  if (!builder) throw ParseError(ParseErrorKind::kMissingHeader, line_no, "empty input");
  if (seen_edges != declared_edges) {
    throw ParseError(ParseErrorKind::kEdgeCountMismatch, line_no,
                     "header says " + std::to_string(declared_edges) + ", found " + std::to_string(seen_edges));
  }
  return std::move(*builder).build();
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

void write_graph(const Graph& g, std::ostream& out) {
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  for (const auto& [name, members] : g.predicates()) {
    out << "l " << name;
    for (Vertex v : members) out << ' ' << v;
    out << '\n';
  }
}

std::string write_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

}  // namespace treerank
