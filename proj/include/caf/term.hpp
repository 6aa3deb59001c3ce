#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace caf {

/// Element of the data universe. Nil is modelled as an empty std::optional
/// wherever a datum may be missing, so it can never be confused with a datum.
using Datum = std::int64_t;

/// A port, or the pre/post value of a memory cell.
///
/// The declaration order of Kind is part of the global term order: ports sort
/// before pre-values, which sort before post-values.
struct DataVariable {
  enum class Kind : std::uint8_t { Port, MemPre, MemPost };

  Kind kind = Kind::Port;
  std::string name;

  static DataVariable port(std::string n) { return {Kind::Port, std::move(n)}; }
  static DataVariable pre(std::string n) { return {Kind::MemPre, std::move(n)}; }
  static DataVariable post(std::string n) { return {Kind::MemPost, std::move(n)}; }

  bool is_port() const { return kind == Kind::Port; }

  /// Text form: `p`, `'m` (pre), `m'` (post).
  std::string str() const;

  friend bool operator==(const DataVariable&, const DataVariable&) = default;
  friend std::strong_ordering operator<=>(const DataVariable& a,
                                          const DataVariable& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.name.compare(b.name) <=> 0;
  }
};

using VariableSet = std::set<DataVariable>;

/// Immutable first-order term: a variable, a constant, or an application of
/// a data function to one or more argument terms. Copies share structure.
class DataTerm {
 public:
  enum class Tag : std::uint8_t { Var, Const, App };

  static DataTerm var(DataVariable v);
  static DataTerm constant(Datum d);
  /// Throws std::invalid_argument when `args` is empty.
  static DataTerm app(std::string function, std::vector<DataTerm> args);

  Tag tag() const;
  bool is_var() const { return tag() == Tag::Var; }
  bool is_var(const DataVariable& v) const { return is_var() && variable() == v; }

  const DataVariable& variable() const;
  Datum value() const;
  const std::string& function() const;
  std::span<const DataTerm> args() const;

  void collect_variables(VariableSet& out) const;
  VariableSet variables() const;
  bool mentions(const DataVariable& v) const;

  /// Replaces every occurrence of `x` by `t`.
  DataTerm substitute(const DataVariable& x, const DataTerm& t) const;

  std::string str() const;

  friend bool operator==(const DataTerm& a, const DataTerm& b);
  /// The global term order: constructor tag, then payload, then children.
  friend std::strong_ordering operator<=>(const DataTerm& a, const DataTerm& b);

 private:
  struct Node;
  explicit DataTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace caf
