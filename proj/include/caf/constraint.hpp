#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "caf/term.hpp"

namespace caf {

/// An atom (bottom, top, equality, relation) or the negation of one.
///
/// Literals are ordered by their canonical text; that order is the literal
/// order used for kernels, symmetric closures, and every tie-break in the
/// commandify pass.
class DataLiteral {
 public:
  enum class Shape : std::uint8_t { Bot, Top, Eq, Rel };

  static DataLiteral bottom();
  static DataLiteral top();
  static DataLiteral eq(DataTerm lhs, DataTerm rhs);
  /// Throws std::invalid_argument when `args` is empty.
  static DataLiteral rel(std::string relation, std::vector<DataTerm> args);
  /// Throws std::invalid_argument when `atom` is already negated.
  static DataLiteral negation(const DataLiteral& atom);

  Shape shape() const;
  bool negated() const;

  const DataTerm& lhs() const;
  const DataTerm& rhs() const;
  const std::string& relation() const;
  /// Relation arguments, or {lhs, rhs} for equalities.
  std::span<const DataTerm> terms() const;

  /// This literal without its negation.
  DataLiteral atom() const;

  /// Positive t1 == t2.
  bool is_equality() const { return !negated() && shape() == Shape::Eq; }
  /// Positive x == t with a variable on the left.
  bool is_var_equality() const { return is_equality() && lhs().is_var(); }
  /// t2 == t1 for t1 == t2; throws for anything but a positive equality.
  DataLiteral flipped() const;
  /// Positive t == t.
  bool is_trivial() const { return is_equality() && lhs() == rhs(); }

  void collect_variables(VariableSet& out) const;
  VariableSet variables() const;
  bool mentions(const DataVariable& v) const;

  DataLiteral substitute(const DataVariable& x, const DataTerm& t) const;

  const std::string& str() const;

  friend bool operator==(const DataLiteral& a, const DataLiteral& b) {
    return a.str() == b.str();
  }
  friend std::strong_ordering operator<=>(const DataLiteral& a,
                                          const DataLiteral& b) {
    return a.str().compare(b.str()) <=> 0;
  }

 private:
  struct Rep;
  explicit DataLiteral(std::shared_ptr<const Rep> r) : rep_(std::move(r)) {}
  std::shared_ptr<const Rep> rep_;
};

/// ∃x1 ... ∃xl . (l1 ∧ ... ∧ lk), with k >= 1.
///
/// The kernel is kept sorted by the literal order; duplicates are kept, so a
/// constraint is a multiset of literals under a prefix of distinct
/// quantified variables (outermost first).
class DataConstraint {
 public:
  /// Throws std::invalid_argument for an empty kernel or repeated
  /// quantified variables.
  DataConstraint(std::vector<DataVariable> quantified,
                 std::vector<DataLiteral> kernel);
  explicit DataConstraint(std::vector<DataLiteral> kernel)
      : DataConstraint({}, std::move(kernel)) {}
  explicit DataConstraint(DataLiteral literal)
      : DataConstraint({}, std::vector<DataLiteral>{std::move(literal)}) {}

  static DataConstraint top() { return DataConstraint(DataLiteral::top()); }
  static DataConstraint bottom() { return DataConstraint(DataLiteral::bottom()); }

  const std::vector<DataVariable>& quantified() const { return quantified_; }
  const std::vector<DataLiteral>& kernel() const { return kernel_; }

  bool is_quantified(const DataVariable& v) const;

  VariableSet free_variables() const;
  /// Free and bound variables.
  VariableSet variables() const;

  /// The same constraint without its quantifier prefix.
  DataConstraint kernel_only() const { return DataConstraint({}, kernel_); }

  std::string str() const;

  friend bool operator==(const DataConstraint&, const DataConstraint&) = default;

 private:
  std::vector<DataVariable> quantified_;
  std::vector<DataLiteral> kernel_;
};

/// A variable of the same kind as `like` whose name starts with the reserved
/// `_` prefix and that does not occur in `avoid`.
DataVariable fresh_variable(const DataVariable& like, const VariableSet& avoid);

/// phi[t/x], capture-free: bound occurrences of x are left alone and
/// quantified variables that occur in t are renamed apart first.
DataConstraint substitute(const DataConstraint& phi, const DataTerm& t,
                          const DataVariable& x);

/// ∃x.phi, or phi itself when x is not free in phi.
DataConstraint exists(const DataVariable& x, const DataConstraint& phi);

/// Conjunction of two constraints, renaming quantified variables apart.
DataConstraint conjoin(const DataConstraint& a, const DataConstraint& b);

/// The kernel literals plus the flipped version of every positive equality.
std::set<DataLiteral> symmetric_closure(const DataConstraint& phi);

/// Drops t == t literals and unused quantifiers; an emptied kernel becomes
/// `true`.
DataConstraint simplify_trivial(const DataConstraint& phi);

}  // namespace caf
