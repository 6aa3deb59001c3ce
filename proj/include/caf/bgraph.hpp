#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "caf/constraint.hpp"

namespace caf {

/// A vertex of a dependency graph: the root ★, a literal of the symmetric
/// closure, or an x == x vertex added for an uncontrolled variable x.
struct LiteralVertex {
  enum class Kind : std::uint8_t { Star, Lit, SelfEq };

  Kind kind = Kind::Star;
  /// Unused for Star.
  std::optional<DataLiteral> literal;

  static LiteralVertex star() { return {}; }
  static LiteralVertex lit(DataLiteral l) { return {Kind::Lit, std::move(l)}; }
  static LiteralVertex self_eq(const DataVariable& x) {
    auto v = DataTerm::var(x);
    return {Kind::SelfEq, DataLiteral::eq(v, v)};
  }

  bool is_star() const { return kind == Kind::Star; }
  std::string str() const { return is_star() ? "*" : literal->str(); }

  /// ★ first, then by literal text.
  friend bool operator==(const LiteralVertex& a, const LiteralVertex& b) {
    return a.is_star() == b.is_star() && (a.is_star() || *a.literal == *b.literal);
  }
  friend bool operator<(const LiteralVertex& a, const LiteralVertex& b) {
    if (a.is_star() || b.is_star()) return a.is_star() && !b.is_star();
    return *a.literal < *b.literal;
  }
};

/// The precedence relation with ★ as least element, transitively closed
/// over the literal vertices.
struct PrecedenceRelation {
  std::vector<LiteralVertex> vertices;
  std::set<std::pair<std::size_t, std::size_t>> arcs;

  std::optional<std::size_t> index_of(const LiteralVertex& v) const;
  bool precedes(const LiteralVertex& a, const LiteralVertex& b) const;
};

PrecedenceRelation precedence_digraph(const DataConstraint& phi, const VariableSet& uncontrolled);

/// A backward hyperarc: tails (vertex indices, ascending) and one head.
/// A literal without dependencies has the single tail ★.
struct BArc {
  std::vector<std::size_t> tails;
  std::size_t head;

  friend auto operator<=>(const BArc&, const BArc&) = default;
};

/// Vertices are sorted: ★ at index 0, then the literal order.
struct BGraph {
  std::vector<LiteralVertex> vertices;
  std::vector<BArc> arcs;

  std::optional<std::size_t> index_of(const LiteralVertex& v) const;
  /// Multiline listing `{tail, tail} -> head`.
  std::string str() const;
};

/// B-graph over symmetric_closure(phi) ∪ {★} ∪ {x == x | x ∈ uncontrolled}:
/// every literal depends on an x == t vertex for each of its variables, an
/// equality x == t also on one for each variable of t alone, and each
/// x == x for an uncontrolled x on ★.
BGraph build_bgraph(const DataConstraint& phi, const VariableSet& uncontrolled);

/// One incoming b-arc per non-root vertex, taken from a B-graph.
struct Arborescence {
  std::vector<LiteralVertex> vertices;
  std::vector<BArc> arcs;

  /// The arc into `head`, if any.
  const BArc* incoming(std::size_t head) const;
};

/// Breadth-first frontier search from ★. Each newly reached vertex takes the
/// least of its enabled arcs. nullopt when some vertex stays unreachable.
std::optional<Arborescence> compute_arborescence(const BGraph& g);

/// Checks that every non-root vertex has exactly one incoming arc, ★ has
/// none, and every vertex is reachable from ★. Returns the violations.
std::vector<std::string> check_arborescence(const Arborescence& arb);

}  // namespace caf
