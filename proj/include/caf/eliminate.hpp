#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/constraint.hpp"

namespace caf {

/// Terms that fix x in every assignment satisfying phi, ordered by the term
/// order. Empty when x is quantified in phi.
std::set<DataTerm> determinants(const DataVariable& x, const DataConstraint& phi);

/// phi with the least determinant of x substituted for x, or ∃x.phi when x
/// has no determinant. The substitution happens inside the quantifier prefix,
/// so determinants that mention quantified variables stay bound. No
/// simplification is applied.
DataConstraint syn_exists(const DataVariable& x, const DataConstraint& phi);

struct EliminationRecord {
  std::string port;
  std::size_t transition;
  /// Text of the substituted determinant; empty when the pass fell back to
  /// quantification.
  std::string determinant;
  std::size_t literals_before;
  std::size_t literals_after;
  /// E_p(phi) before simplify_trivial.
  std::string raw_guard;
};

/// Like hide, but each guard mentioning `port` becomes
/// simplify_trivial(syn_exists(port, guard)). Appends one record per
/// rewritten guard to `log` when given. Throws AutomatonError for an unknown
/// port.
ConstraintAutomaton eliminate(const ConstraintAutomaton& a, const std::string& port,
                              std::vector<EliminationRecord>* log = nullptr);

/// Ports that have a determinant in every guard mentioning them.
PortSet ever_determined(const ConstraintAutomaton& a);

}  // namespace caf
