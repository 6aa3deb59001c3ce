#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "caf/constraint.hpp"
#include "caf/term.hpp"

namespace caf {

using PortSet = std::set<std::string>;

struct PortTriple {
  PortSet all;
  PortSet inputs;
  PortSet outputs;

  bool is_input(const std::string& p) const { return inputs.count(p) != 0; }
  bool is_output(const std::string& p) const { return outputs.count(p) != 0; }
  bool is_internal(const std::string& p) const {
    return all.count(p) && !is_input(p) && !is_output(p);
  }

  friend bool operator==(const PortTriple&, const PortTriple&) = default;
};

struct Transition {
  std::string source;
  PortSet sync;
  DataConstraint guard;
  std::string target;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// `{a, b}`
std::string sync_text(const PortSet& sync);

struct ConstraintAutomaton {
  std::string name;
  std::set<std::string> states;
  PortTriple ports;
  std::set<std::string> memory;
  std::vector<Transition> transitions;
  std::string initial;
  /// Cells that hold a datum before the first step; absent cells are empty.
  std::map<std::string, Datum> initial_memory;

  friend bool operator==(const ConstraintAutomaton&, const ConstraintAutomaton&) = default;
};

struct JoinLimits {
  std::size_t max_states = 4096;
  std::size_t max_transitions = 20000;
};

/// Human-readable violations of the automaton invariants; empty when valid.
std::vector<std::string> validate(const ConstraintAutomaton& a);

/// Throws AutomatonError listing the violations, if any.
void require_valid(const ConstraintAutomaton& a);

/// Sorts transitions by (source, sync, target, guard) and drops exact
/// duplicates.
ConstraintAutomaton canonicalize(ConstraintAutomaton a);

/// Synchronous product restricted to states reachable from the initial one.
/// Shared ports that are input on one side and output on the other become
/// internal. Throws AutomatonError on clashing memory cells, on a shared
/// port that is internal on either side, or when `limits` are exceeded.
ConstraintAutomaton join(const ConstraintAutomaton& a1, const ConstraintAutomaton& a2,
                         const JoinLimits& limits = {});

/// Removes `port` from the interface and existentially quantifies it in
/// every guard. Throws AutomatonError for an unknown port.
ConstraintAutomaton hide(const ConstraintAutomaton& a, const std::string& port);

}  // namespace caf
