#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caf/constraint.hpp"
#include "caf/registry.hpp"
#include "caf/term.hpp"

namespace caf {

/// Finite partial map from data variables to data, kept as a sorted vector.
class DataAssignment {
 public:
  using Binding = std::pair<DataVariable, Datum>;

  DataAssignment() = default;
  DataAssignment(std::initializer_list<Binding> bindings);

  std::optional<Datum> get(const DataVariable& v) const;
  bool contains(const DataVariable& v) const { return get(v).has_value(); }
  void set(const DataVariable& v, Datum d);
  void erase(const DataVariable& v);

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }

  VariableSet domain() const;
  DataAssignment restricted_to(const VariableSet& vars) const;
  /// Every binding of this assignment also appears in `other`.
  bool subset_of(const DataAssignment& other) const;

  std::string str() const;

  friend bool operator==(const DataAssignment&, const DataAssignment&) = default;
  friend auto operator<=>(const DataAssignment&, const DataAssignment&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// The carrier {0, ..., size-1} that the oracle enumerates.
class FiniteDomain {
 public:
  /// Throws std::invalid_argument when size < 1.
  explicit FiniteDomain(int size);
  int size() const { return size_; }

 private:
  int size_;
};

/// Nil is std::nullopt. Throws ConfigError for unregistered functions.
std::optional<Datum> evaluate(const DataAssignment& sigma, const DataTerm& t,
                              const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Entailment for a single literal (no quantifiers involved).
bool entails(const DataAssignment& sigma, const DataLiteral& literal,
             const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Entailment for a constraint. Witnesses for quantified variables come from
/// the finite domain plus any value an equality forces on the variable.
bool entails(const DataAssignment& sigma, const DataConstraint& phi, FiniteDomain dom,
             const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// First extension of `sigma_init` over free(phi) that entails phi, or
/// nullopt. Variables are bound one at a time: a variable whose value is
/// already forced by an equality is bound first (to that value); otherwise
/// the least unbound variable is tried against every domain value in
/// ascending order. Quantified variables take part in the same search but
/// are left out of the result.
std::optional<DataAssignment> solve_bruteforce(
    const DataConstraint& phi, const DataAssignment& sigma_init, FiniteDomain dom,
    const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Every distinct extension of `sigma_init` over free(phi) that entails phi,
/// found by the same search as solve_bruteforce.
std::vector<DataAssignment> all_solutions(
    const DataConstraint& phi, const DataAssignment& sigma_init, FiniteDomain dom,
    const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Calls `visit` for every assignment over `vars` whose values range over
/// the domain, plus "unbound" when `with_undefined` is set. Stops early when
/// `visit` returns false; returns false in that case.
bool for_each_assignment(const std::vector<DataVariable>& vars, FiniteDomain dom,
                         bool with_undefined,
                         const std::function<bool(const DataAssignment&)>& visit);

/// phi1 and phi2 agree on every assignment over their free variables with
/// values in dom or undefined.
bool equivalent_on_domain(const DataConstraint& phi1, const DataConstraint& phi2,
                          FiniteDomain dom,
                          const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

/// Low-level search shared by entailment, the solver, and the trace oracle.
///
/// Binds every variable in `unknowns` (which must be unbound in `sigma`) so
/// that all `literals` hold, visiting complete bindings in the order
/// described at solve_bruteforce. `visit` returns false to stop. `sigma` is
/// restored before returning.
void search_solutions(std::span<const DataLiteral> literals, DataAssignment& sigma,
                      const std::vector<DataVariable>& unknowns, FiniteDomain dom,
                      const ExtralogicalRegistry& reg,
                      const std::function<bool(const DataAssignment&)>& visit);

}  // namespace caf
