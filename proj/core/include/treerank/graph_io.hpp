#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "treerank/graph.hpp"

namespace treerank {

// Line-oriented text format; '#' starts a comment anywhere on a line.
//
//   p <n> <m>              header, exactly one, first non-comment line
//   e <u> <v>              edge, 0-indexed, u != v, no duplicates
//   l <name> <v1> ... <vk> unary predicate; repeatable, sets are unioned
//
// The header's edge count must match the number of 'e' lines.

/// Throws ParseError carrying the offending line number.
Graph parse_graph(std::istream& in);
Graph parse_graph(std::string_view text);

/// Canonical form: header, edges (u < v) in lexicographic order, then one
/// 'l' line per predicate in name order.
void write_graph(const Graph& g, std::ostream& out);
std::string write_graph(const Graph& g);

}  // namespace treerank
