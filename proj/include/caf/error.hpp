#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caf {

/// Unregistered extralogical symbol, bad primitive bindings, and similar
/// setup mistakes. Distinct from evaluation yielding nil.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Structural problems with automata (unknown ports, clashes in join, ...).
class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a pass detects a broken internal guarantee. Seeing one means
/// a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace caf
