#pragma once

#include <stdexcept>
#include <string>

namespace stallings {

// Malformed textual input (words, subgroup files, graph files).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates an operation's requirements
// (e.g. trivial subgroup where a nontrivial one is needed, size caps).
struct SemanticError : std::runtime_error {
  explicit SemanticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stallings
