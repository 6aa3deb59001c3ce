#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/registry.hpp"

namespace caf {

/// Binding of one primitive instance, as in `name[R]{m}(in1, in2; out1)`.
struct PrimitiveSpec {
  /// sync, syncdrain, lossysync, filter, fifo, merg2, repl2, binop
  std::string kind;
  /// Relation of filter or function of binop.
  std::string extralogical;
  std::vector<std::string> memory;
  std::map<std::string, Datum> initial_memory;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

/// The primitive automaton for `spec`. Throws ConfigError for unknown kinds,
/// wrong arities, repeated ports, or unregistered extralogicals.
ConstraintAutomaton make_primitive(const PrimitiveSpec& spec,
                                   const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// The eight primitive kinds, lowercase.
const std::vector<std::string>& primitive_kinds();

}  // namespace caf
