#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treerank {

/// Thrown by exhaustive (desk-scale) searches when an instance exceeds the
/// configured caps. Callers treat this as "no verdict", never as "absent".
class ScaleExceeded : public std::runtime_error {
 public:
  explicit ScaleExceeded(const std::string& what) : std::runtime_error("scale exceeded: " + what) {}
};

/// Thrown when a structure handed to an operation breaks an invariant the
/// operation relies on (e.g. a sparsified graph with two apex neighbours).
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

enum class ParseErrorKind {
  kMissingHeader,
  kDuplicateHeader,
  kMalformedLine,
  kUnknownDirective,
  kVertexOutOfRange,
  kDuplicateEdge,
  kSelfLoop,
  kEdgeCountMismatch,
};

const char* to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

}  // namespace treerank
