#include "caf/automaton_text.hpp"

#include "caf/error.hpp"

namespace caf {

namespace {

using K = Token::Kind;

std::string ident(TokenStream& ts, std::string_view what) {
  return ts.expect(K::Ident, what).text;
}

void parse_ports(TokenStream& ts, ConstraintAutomaton& a) {
  ts.expect(K::LBrace, "'{'");
  while (!ts.accept(K::RBrace)) {
    const Token& dir = ts.peek();
    std::string d = ident(ts, "'in', 'out' or 'internal'");
    std::string p = ident(ts, "a port name");
    if (!a.ports.all.insert(p).second) ts.fail_at(dir, "port '" + p + "' declared twice");
    if (d == "in") a.ports.inputs.insert(p);
    else if (d == "out") a.ports.outputs.insert(p);
    else if (d != "internal") ts.fail_at(dir, "expected 'in', 'out' or 'internal'");
    ts.expect(K::Semi, "';'");
  }
}

void parse_memory(TokenStream& ts, ConstraintAutomaton& a) {
  ts.expect(K::LBrace, "'{'");
  while (!ts.accept(K::RBrace)) {
    const Token& at = ts.peek();
    std::string m = ident(ts, "a memory cell name");
    if (!a.memory.insert(m).second) ts.fail_at(at, "memory cell '" + m + "' declared twice");
    if (ts.accept(K::Equals)) {
      const Token& v = ts.expect(K::Int, "an integer");
      a.initial_memory[m] = std::stoll(v.text);
    }
    ts.expect(K::Semi, "';'");
  }
}

void parse_states(TokenStream& ts, ConstraintAutomaton& a) {
  ts.expect(K::LBrace, "'{'");
  bool have_initial = false;
  while (!ts.accept(K::RBrace)) {
    const Token& at = ts.peek();
    std::string q = ident(ts, "a state name");
    if (!a.states.insert(q).second) ts.fail_at(at, "state '" + q + "' declared twice");
    if (ts.at_ident("init")) {
      if (have_initial) ts.fail("second initial state");
      ts.next();
      a.initial = q;
      have_initial = true;
    }
    ts.expect(K::Semi, "';'");
  }
  if (!have_initial) ts.fail("no initial state declared");
}

void parse_transition(TokenStream& ts, ConstraintAutomaton& a, const TransitionSuffixParser& suffix) {
  Transition t{{}, {}, DataConstraint::top(), {}};
  t.source = ident(ts, "a source state");
  const Token& arrow = ts.expect(K::Arrow, "'->'");
  if (!ts.at(K::Ident)) ts.fail_at(arrow, "expected a target state after");
  t.target = ts.next().text;
  ts.expect_ident("on");
  ts.expect(K::LBrace, "'{'");
  if (!ts.accept(K::RBrace)) {
    do {
      t.sync.insert(ident(ts, "a port name"));
    } while (ts.accept(K::Comma));
    ts.expect(K::RBrace, "'}'");
  }
  if (ts.at_ident("where")) {
    ts.next();
    t.guard = parse_constraint(ts);
  }
  if (suffix) suffix(ts, a.transitions.size());
  ts.expect(K::Semi, "';'");
  a.transitions.push_back(std::move(t));
}

}  // namespace

ConstraintAutomaton parse_automaton(TokenStream& ts) { return parse_automaton(ts, nullptr); }

ConstraintAutomaton parse_automaton(TokenStream& ts, const TransitionSuffixParser& suffix) {
  ConstraintAutomaton a;
  ts.expect_ident("automaton");
  a.name = ident(ts, "an automaton name");
  ts.expect(K::LBrace, "'{'");
  while (!ts.accept(K::RBrace)) {
    if (ts.at_ident("ports")) {
      ts.next();
      parse_ports(ts, a);
    } else if (ts.at_ident("memory")) {
      ts.next();
      parse_memory(ts, a);
    } else if (ts.at_ident("states")) {
      ts.next();
      parse_states(ts, a);
    } else if (ts.at_ident("trans")) {
      ts.next();
      parse_transition(ts, a, suffix);
    } else {
      ts.fail("expected 'ports', 'memory', 'states', 'trans' or '}'");
    }
  }
  require_valid(a);
  return a;
}

ConstraintAutomaton parse_automaton(std::string_view text) {
  TokenStream ts(text);
  ConstraintAutomaton a = parse_automaton(ts);
  ts.expect_end();
  return a;
}

std::string serialize_automaton(const ConstraintAutomaton& in) { return serialize_automaton(in, nullptr); }

std::string serialize_automaton(const ConstraintAutomaton& in,
                                const std::function<std::string(std::size_t)>& suffix) {
  ConstraintAutomaton a = canonicalize(in);
  std::string s = "automaton " + a.name + " {\n  ports {";
  for (const auto& p : a.ports.all) {
    const char* d = a.ports.is_input(p) ? "in" : a.ports.is_output(p) ? "out" : "internal";
    s += std::string(" ") + d + " " + p + ";";
  }
  s += " }\n  memory {";
  for (const auto& m : a.memory) {
    s += " " + m;
    if (auto it = a.initial_memory.find(m); it != a.initial_memory.end())
      s += " = " + std::to_string(it->second);
    s += ";";
  }
  s += " }\n  states {";
  for (const auto& q : a.states) s += " " + q + (q == a.initial ? " init;" : ";");
  s += " }\n";
  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    s += "  trans " + t.source + " -> " + t.target + " on " + sync_text(t.sync) + " where " +
         t.guard.str();
    if (suffix) s += suffix(i);
    s += " ;\n";
  }
  return s + "}\n";
}

}  // namespace caf
