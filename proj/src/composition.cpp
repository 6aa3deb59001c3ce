#include "caf/composition.hpp"

#include <algorithm>

#include "caf/error.hpp"
#include "caf/syntax.hpp"

namespace caf {

CompositionExpr CompositionExpr::prim(PrimitiveSpec spec) {
  CompositionExpr e;
  e.kind_ = Kind::Prim;
  e.spec_ = std::move(spec);
  return e;
}

CompositionExpr CompositionExpr::join(CompositionExpr left, CompositionExpr right) {
  CompositionExpr e;
  e.kind_ = Kind::Join;
  e.left_ = std::make_shared<const CompositionExpr>(std::move(left));
  e.right_ = std::make_shared<const CompositionExpr>(std::move(right));
  return e;
}

CompositionExpr CompositionExpr::join_all(std::vector<CompositionExpr> operands) {
  if (operands.empty()) throw ConfigError("join needs at least one operand");
  CompositionExpr acc = std::move(operands[0]);
  for (std::size_t i = 1; i < operands.size(); ++i) acc = join(std::move(acc), std::move(operands[i]));
  return acc;
}

CompositionExpr CompositionExpr::hide(CompositionExpr body, std::string port) {
  CompositionExpr e;
  e.kind_ = Kind::Hide;
  e.left_ = std::make_shared<const CompositionExpr>(std::move(body));
  e.port_ = std::move(port);
  return e;
}

CompositionExpr CompositionExpr::elim(CompositionExpr body, std::string port) {
  CompositionExpr e = hide(std::move(body), std::move(port));
  e.kind_ = Kind::Elim;
  return e;
}

namespace {

std::string join_names(const std::vector<std::string>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
  return s;
}

std::string prim_text(const PrimitiveSpec& p) {
  std::string s = p.kind;
  if (!p.extralogical.empty()) s += "[" + p.extralogical + "]";
  if (!p.memory.empty()) {
    s += "{";
    for (std::size_t i = 0; i < p.memory.size(); ++i) {
      if (i) s += ",";
      s += p.memory[i];
      if (auto it = p.initial_memory.find(p.memory[i]); it != p.initial_memory.end())
        s += "=" + std::to_string(it->second);
    }
    s += "}";
  }
  return s + "(" + join_names(p.inputs) + ";" + join_names(p.outputs) + ")";
}

}  // namespace

std::string CompositionExpr::str() const {
  switch (kind_) {
    case Kind::Prim:
      return prim_text(spec_);
    case Kind::Join: {
      std::vector<const CompositionExpr*> ops{right_.get()};
      const CompositionExpr* e = left_.get();
      while (e->kind_ == Kind::Join) {
        ops.push_back(e->right_.get());
        e = e->left_.get();
      }
      ops.push_back(e);
      std::string s = "join(";
      for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        s += (it == ops.rbegin() ? "" : ", ") + (*it)->str();
      return s + ")";
    }
    case Kind::Hide:
    case Kind::Elim: {
      std::vector<std::string> ports{port_};
      const CompositionExpr* e = left_.get();
      while (e->kind_ == kind_) {
        ports.push_back(e->port_);
        e = e->left_.get();
      }
      std::string s = (kind_ == Kind::Hide ? "hide(" : "elim(") + e->str();
      for (auto it = ports.rbegin(); it != ports.rend(); ++it) s += ", " + *it;
      return s + ")";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------

namespace {

using K = Token::Kind;

std::vector<std::string> port_list(TokenStream& ts, K stop) {
  std::vector<std::string> out;
  if (ts.at(stop)) return out;
  do {
    out.push_back(ts.expect(K::Ident, "a port name").text);
  } while (ts.accept(K::Comma));
  return out;
}

CompositionExpr parse_expr(TokenStream& ts) {
  const Token& head = ts.expect(K::Ident, "an expression");
  std::string word = head.text;
  if (word == "join" || word == "hide" || word == "elim") {
    ts.expect(K::LParen, "'('");
    if (word == "join") {
      std::vector<CompositionExpr> ops;
      do {
        ops.push_back(parse_expr(ts));
      } while (ts.accept(K::Comma));
      ts.expect(K::RParen, "')'");
      return CompositionExpr::join_all(std::move(ops));
    }
    CompositionExpr body = parse_expr(ts);
    ts.expect(K::Comma, "',' and a port name");
    do {
      std::string p = ts.expect(K::Ident, "a port name").text;
      body = word == "hide" ? CompositionExpr::hide(std::move(body), std::move(p))
                            : CompositionExpr::elim(std::move(body), std::move(p));
    } while (ts.accept(K::Comma));
    ts.expect(K::RParen, "')'");
    return body;
  }

  PrimitiveSpec spec;
  spec.kind = word;
  if (std::find(primitive_kinds().begin(), primitive_kinds().end(), word) == primitive_kinds().end())
    ts.fail_at(head, "unknown primitive");
  if (ts.accept(K::LBracket)) {
    spec.extralogical = ts.expect(K::Ident, "a data function or relation").text;
    ts.expect(K::RBracket, "']'");
  }
  if (ts.accept(K::LBrace)) {
    do {
      std::string m = ts.expect(K::Ident, "a memory cell name").text;
      if (ts.accept(K::Equals)) spec.initial_memory[m] = std::stoll(ts.expect(K::Int, "an integer").text);
      spec.memory.push_back(std::move(m));
    } while (ts.accept(K::Comma));
    ts.expect(K::RBrace, "'}'");
  }
  ts.expect(K::LParen, "'('");
  spec.inputs = port_list(ts, K::Semi);
  ts.expect(K::Semi, "';'");
  spec.outputs = port_list(ts, K::RParen);
  ts.expect(K::RParen, "')'");
  return CompositionExpr::prim(std::move(spec));
}

}  // namespace

Composition parse_composition(std::string_view text) {
  TokenStream ts(text);
  ts.expect_ident("compose");
  std::string name = ts.expect(K::Ident, "a composition name").text;
  ts.expect(K::Equals, "'='");
  CompositionExpr e = parse_expr(ts);
  ts.accept(K::Semi);
  ts.expect_end();
  return Composition{std::move(name), std::move(e)};
}

std::string serialize_composition(const Composition& c) {
  return "compose " + c.name + " = " + c.expr.str() + "\n";
}

// ---------------------------------------------------------------------------

ConstraintAutomaton eval_composition(const CompositionExpr& e, const EvalOptions& opts,
                                     const ExtralogicalRegistry& reg) {
  switch (e.kind()) {
    case CompositionExpr::Kind::Prim:
      return make_primitive(e.spec(), reg);
    case CompositionExpr::Kind::Join:
      return join(eval_composition(e.left(), opts, reg), eval_composition(e.right(), opts, reg),
                  opts.limits);
    case CompositionExpr::Kind::Hide:
      if (!opts.hide_as_elim) return hide(eval_composition(e.left(), opts, reg), e.port());
      [[fallthrough]];
    case CompositionExpr::Kind::Elim:
      return eliminate(eval_composition(e.left(), opts, reg), e.port(), opts.log);
  }
  throw InternalError("unknown composition node");
}

ConstraintAutomaton eval_composition(const Composition& c, const EvalOptions& opts,
                                     const ExtralogicalRegistry& reg) {
  ConstraintAutomaton a = eval_composition(c.expr, opts, reg);
  a.name = c.name;
  return a;
}

}  // namespace caf
