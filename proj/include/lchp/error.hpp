#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lchp {

/// Raised when an operation receives an argument outside its domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input (edge lists, popularity files, CSV, configs).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyGraph : public std::runtime_error {
 public:
  EmptyGraph() : std::runtime_error("empty-graph: input contains no edges") {}
};

}  // namespace lchp
