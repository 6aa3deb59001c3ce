#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "caf/term.hpp"

namespace caf {

/// Data functions and data relations, keyed by name.
class ExtralogicalRegistry {
 public:
  using Function = std::function<Datum(std::span<const Datum>)>;
  using Relation = std::function<bool(std::span<const Datum>)>;

  struct FunctionEntry {
    std::size_t arity;
    Function fn;
  };
  struct RelationEntry {
    std::size_t arity;
    Relation holds;
  };

  void add_function(std::string name, std::size_t arity, Function fn);
  void add_relation(std::string name, std::size_t arity, Relation holds);

  /// Throw ConfigError for unknown names.
  const FunctionEntry& function(const std::string& name) const;
  const RelationEntry& relation(const std::string& name) const;

  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  bool has_relation(const std::string& name) const { return relations_.count(name) != 0; }

  /// add, mult, inc, Odd, SmallerThan, divByThree.
  static const ExtralogicalRegistry& builtin();

 private:
  std::map<std::string, FunctionEntry, std::less<>> functions_;
  std::map<std::string, RelationEntry, std::less<>> relations_;
};

}  // namespace caf
