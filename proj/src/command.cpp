#include "caf/command.hpp"

#include <stdexcept>

#include "caf/syntax.hpp"

namespace caf {

struct DataCommand::Node {
  Kind kind;
  std::optional<DataVariable> target;
  std::optional<DataTerm> term;
  std::optional<DataConstraint> guard;
  std::optional<DataCommand> first;
  std::optional<DataCommand> second;
};

DataCommand DataCommand::skip() {
  static const DataCommand s(std::make_shared<const Node>(Node{Kind::Skip, {}, {}, {}, {}, {}}));
  return s;
}

DataCommand DataCommand::empty() {
  static const DataCommand e(std::make_shared<const Node>(Node{Kind::Empty, {}, {}, {}, {}, {}}));
  return e;
}

DataCommand DataCommand::assign(DataVariable x, DataTerm t) {
  return DataCommand(
      std::make_shared<const Node>(Node{Kind::Assign, std::move(x), std::move(t), {}, {}, {}}));
}

DataCommand DataCommand::fail_unless(DataConstraint guard, DataCommand body) {
  if (!guard.quantified().empty())
    throw std::invalid_argument("failure statement guards must be quantifier-free");
  return DataCommand(std::make_shared<const Node>(
      Node{Kind::FailUnless, {}, {}, std::move(guard), std::move(body), {}}));
}

DataCommand DataCommand::seq(DataCommand first, DataCommand second) {
  return DataCommand(std::make_shared<const Node>(
      Node{Kind::Seq, {}, {}, {}, std::move(first), std::move(second)}));
}

DataCommand DataCommand::sequence(const std::vector<DataCommand>& parts) {
  if (parts.empty()) return skip();
  DataCommand acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = seq(acc, parts[i]);
  return acc;
}

DataCommand::Kind DataCommand::kind() const { return node_->kind; }
const DataVariable& DataCommand::target() const { return node_->target.value(); }
const DataTerm& DataCommand::term() const { return node_->term.value(); }
const DataConstraint& DataCommand::guard() const { return node_->guard.value(); }
const DataCommand& DataCommand::first() const { return node_->first.value(); }
const DataCommand& DataCommand::second() const { return node_->second.value(); }

namespace {

void flatten(const DataCommand& c, std::vector<DataCommand>& out) {
  if (c.kind() == DataCommand::Kind::Seq) {
    flatten(c.first(), out);
    flatten(c.second(), out);
  } else {
    out.push_back(c);
  }
}

}  // namespace

std::vector<DataCommand> DataCommand::statements() const {
  std::vector<DataCommand> out;
  flatten(*this, out);
  return out;
}

std::size_t DataCommand::length() const {
  switch (kind()) {
    case Kind::Assign:
      return 1;
    case Kind::FailUnless:
      return 1 + first().length();
    case Kind::Seq:
      return first().length() + second().length();
    default:
      return 0;
  }
}

std::string DataCommand::str() const {
  switch (kind()) {
    case Kind::Skip:
      return "skip";
    case Kind::Empty:
      return "empty";
    case Kind::Assign:
      return target().str() + " := " + term().str();
    case Kind::FailUnless: {
      std::string body = first().str();
      if (first().kind() == Kind::Seq) body = "(" + body + ")";
      return "if " + guard().str() + " then " + body;
    }
    case Kind::Seq: {
      std::string rhs = second().str();
      if (second().kind() == Kind::Seq) rhs = "(" + rhs + ")";
      return first().str() + " ; " + rhs;
    }
  }
  return {};
}

bool operator==(const DataCommand& a, const DataCommand& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case DataCommand::Kind::Skip:
    case DataCommand::Kind::Empty:
      return true;
    case DataCommand::Kind::Assign:
      return a.target() == b.target() && a.term() == b.term();
    case DataCommand::Kind::FailUnless:
      return a.guard() == b.guard() && a.first() == b.first();
    case DataCommand::Kind::Seq:
      return a.first() == b.first() && a.second() == b.second();
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

bool holds(const DataAssignment& sigma, const DataConstraint& guard,
           const ExtralogicalRegistry& reg) {
  for (const auto& l : guard.kernel())
    if (!entails(sigma, l, reg)) return false;
  return true;
}

void do_assign(DataAssignment& sigma, const DataCommand& c, const ExtralogicalRegistry& reg) {
  if (auto v = evaluate(sigma, c.term(), reg)) sigma.set(c.target(), *v);
  else sigma.erase(c.target());
}

// Returns false on failure.
bool run(const DataCommand& c, DataAssignment& sigma, const ExtralogicalRegistry& reg) {
  switch (c.kind()) {
    case DataCommand::Kind::Skip:
    case DataCommand::Kind::Empty:
      return true;
    case DataCommand::Kind::Assign:
      do_assign(sigma, c, reg);
      return true;
    case DataCommand::Kind::FailUnless:
      return holds(sigma, c.guard(), reg) && run(c.first(), sigma, reg);
    case DataCommand::Kind::Seq:
      return run(c.first(), sigma, reg) && run(c.second(), sigma, reg);
  }
  return true;
}

}  // namespace

DataConfiguration step(const DataConfiguration& c, const ExtralogicalRegistry& reg) {
  using K = DataCommand::Kind;
  if (c.terminal()) throw std::invalid_argument("no step from a terminal configuration");
  const DataCommand& pi = c.command;
  switch (pi.kind()) {
    case K::Skip:
      return {DataCommand::empty(), c.state};
    case K::Assign: {
      DataAssignment sigma = *c.state;
      do_assign(sigma, pi, reg);
      return {DataCommand::empty(), std::move(sigma)};
    }
    case K::FailUnless:
      if (holds(*c.state, pi.guard(), reg)) return {pi.first(), c.state};
      return {DataCommand::empty(), std::nullopt};
    case K::Seq: {
      DataConfiguration inner = step({pi.first(), c.state}, reg);
      if (inner.command.kind() == K::Empty) return {pi.second(), std::move(inner.state)};
      return {DataCommand::seq(inner.command, pi.second()), std::move(inner.state)};
    }
    case K::Empty:
      break;
  }
  throw std::invalid_argument("no step from a terminal configuration");
}

DataState exec(const DataCommand& pi, DataAssignment sigma, const ExtralogicalRegistry& reg) {
  if (!run(pi, sigma, reg)) return std::nullopt;
  return sigma;
}

// ---------------------------------------------------------------------------

namespace {

using K = Token::Kind;

DataCommand parse_sequence(TokenStream& ts);

DataCommand parse_statement(TokenStream& ts) {
  if (ts.at(K::LParen)) {
    ts.next();
    DataCommand c = parse_sequence(ts);
    ts.expect(K::RParen, "')'");
    return c;
  }
  if (!ts.at(K::Assign, 1)) {
    if (ts.at_ident("skip")) {
      ts.next();
      return DataCommand::skip();
    }
    if (ts.at_ident("empty")) {
      ts.next();
      return DataCommand::empty();
    }
    if (ts.at_ident("if")) {
      const Token& at = ts.next();
      DataConstraint guard = parse_constraint(ts);
      if (!guard.quantified().empty()) ts.fail_at(at, "quantified guard in failure statement");
      ts.expect_ident("then");
      return DataCommand::fail_unless(std::move(guard), parse_statement(ts));
    }
  }
  DataVariable x = parse_variable(ts);
  ts.expect(K::Assign, "':='");
  return DataCommand::assign(std::move(x), parse_term(ts));
}

DataCommand parse_sequence(TokenStream& ts) {
  DataCommand acc = parse_statement(ts);
  while (ts.accept(K::Semi)) acc = DataCommand::seq(acc, parse_statement(ts));
  return acc;
}

}  // namespace

DataCommand parse_command(TokenStream& ts) { return parse_sequence(ts); }

DataCommand parse_command(std::string_view text) {
  TokenStream ts(text);
  DataCommand c = parse_sequence(ts);
  ts.expect_end();
  return c;
}

}  // namespace caf
