#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/bgraph.hpp"
#include "caf/command.hpp"

namespace caf {

/// The symmetric closure in translation order. The first `n` literals are
/// equalities x == t; the rest are everything else.
struct LinearizedPlan {
  std::vector<DataLiteral> literals;
  std::size_t n = 0;

  std::size_t m() const { return literals.size() - n; }
};

/// Strict precedence extracted from an arborescence: its arcs split into
/// single-tailed arcs between literals, every x == t before every literal of
/// another shape, transitively closed.
std::set<std::pair<DataLiteral, DataLiteral>> strict_precedence(const DataConstraint& phi,
                                                                const Arborescence& arb);

/// Topological sort of the strict precedence, least literal first among the
/// available ones. Throws InternalError if the result does not meet the
/// translation requirements.
LinearizedPlan derive_plan(const DataConstraint& phi, const VariableSet& uncontrolled,
                           const Arborescence& arb);

/// Empty list when (phi, uncontrolled, plan) meets every requirement of the
/// translation; otherwise one message per violation.
std::vector<std::string> plan_violations(const DataConstraint& phi,
                                         const VariableSet& uncontrolled,
                                         const LinearizedPlan& plan);

/// skip, then one statement per plan literal: x := t for the first equality
/// of an x that is neither uncontrolled nor assigned yet, a failure
/// statement otherwise.
DataCommand translate(const VariableSet& uncontrolled, const LinearizedPlan& plan);

/// Drops a failure statement on t2 == t1 when an earlier statement already
/// assigns t1 := t2 or checks t1 == t2.
DataCommand dedup_failures(const DataCommand& pi);

struct CompiledConstraint {
  enum class Mode { Compiled, SolverFallback };

  DataConstraint original;
  Mode mode = Mode::SolverFallback;
  /// Only meaningful in Compiled mode.
  DataCommand command = DataCommand::skip();
  /// Uncontrolled variables, in term order.
  std::vector<DataVariable> uncontrolled;
  /// free(original) in term order.
  std::vector<DataVariable> free_order;
  /// Number of b-arcs in the arborescence; 0 on fallback.
  std::size_t arborescence_size = 0;

  bool compiled() const { return mode == Mode::Compiled; }

  friend bool operator==(const CompiledConstraint&, const CompiledConstraint&) = default;
};

/// Compiled when uncontrolled ⊆ free(phi) and the B-graph of the kernel has
/// an arborescence; otherwise SolverFallback carrying phi unchanged.
/// Quantified variables are assigned like any other controllable variable.
CompiledConstraint commandify_constraint(const DataConstraint& phi,
                                         const VariableSet& uncontrolled);

/// free(phi) ∩ (input ports ∪ pre-values of memory cells).
VariableSet uncontrolled_variables(const ConstraintAutomaton& a, const DataConstraint& phi);

/// A canonical automaton with one compiled guard per transition. There is
/// deliberately no join on compiled automata.
struct CompiledAutomaton {
  ConstraintAutomaton automaton;
  std::vector<CompiledConstraint> guards;

  std::size_t fallback_count() const;

  friend bool operator==(const CompiledAutomaton&, const CompiledAutomaton&) = default;
};

/// Canonicalizes `a` and commandifies every guard. Throws AutomatonError
/// when `a` is invalid.
CompiledAutomaton commandify_automaton(const ConstraintAutomaton& a);

/// True when every guard of `a` has an arborescence for its transition's
/// uncontrolled variables.
bool is_arborescent(const ConstraintAutomaton& a);

}  // namespace caf
