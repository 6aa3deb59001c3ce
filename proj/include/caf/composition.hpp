#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "caf/automaton.hpp"
#include "caf/eliminate.hpp"
#include "caf/primitives.hpp"
#include "caf/registry.hpp"

namespace caf {

/// Join/hide/elim expression over primitive instances.
class CompositionExpr {
 public:
  enum class Kind { Prim, Join, Hide, Elim };

  static CompositionExpr prim(PrimitiveSpec spec);
  static CompositionExpr join(CompositionExpr left, CompositionExpr right);
  /// Left-nested join of one or more operands.
  static CompositionExpr join_all(std::vector<CompositionExpr> operands);
  static CompositionExpr hide(CompositionExpr body, std::string port);
  static CompositionExpr elim(CompositionExpr body, std::string port);

  Kind kind() const { return kind_; }
  const PrimitiveSpec& spec() const { return spec_; }
  const CompositionExpr& left() const { return *left_; }
  const CompositionExpr& right() const { return *right_; }
  const std::string& port() const { return port_; }

  /// Text form; nested joins and consecutive hides are flattened, as in
  /// `hide(join(sync(a;p), sync(p;b)), p)`.
  std::string str() const;

 private:
  CompositionExpr() = default;

  Kind kind_ = Kind::Prim;
  PrimitiveSpec spec_;
  std::shared_ptr<const CompositionExpr> left_;
  std::shared_ptr<const CompositionExpr> right_;
  std::string port_;
};

struct Composition {
  std::string name;
  CompositionExpr expr;
};

/// `compose Name = expr`, with lowercase primitive constructors:
/// sync, syncdrain, lossysync, filter[R], fifo{m} or fifo{m=d}, merg2,
/// repl2, binop[f]; plus join(e, ...), hide(e, p, ...), elim(e, p, ...).
/// Throws ParseError.
Composition parse_composition(std::string_view text);

std::string serialize_composition(const Composition& c);

struct EvalOptions {
  /// Evaluate hide nodes as elim nodes.
  bool hide_as_elim = false;
  JoinLimits limits;
  std::vector<EliminationRecord>* log = nullptr;
};

ConstraintAutomaton eval_composition(const CompositionExpr& expr, const EvalOptions& opts = {},
                                     const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());
ConstraintAutomaton eval_composition(const Composition& c, const EvalOptions& opts = {},
                                     const ExtralogicalRegistry& reg = ExtralogicalRegistry::builtin());

}  // namespace caf
