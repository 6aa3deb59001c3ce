#include "caf/document.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "caf/automaton_text.hpp"
#include "caf/bgraph.hpp"
#include "caf/composition.hpp"
#include "caf/eliminate.hpp"
#include "caf/error.hpp"
#include "caf/runtime.hpp"
#include "caf/syntax.hpp"

namespace caf {

namespace {

using K = Token::Kind;

constexpr std::string_view kMagic = "caf-document";

CompiledConstraint restore(const ConstraintAutomaton& a, const DataConstraint& guard,
                           std::optional<DataCommand> command) {
  VariableSet x = uncontrolled_variables(a, guard);
  auto free = guard.free_variables();
  CompiledConstraint c{guard, CompiledConstraint::Mode::SolverFallback, DataCommand::skip(),
                       {x.begin(), x.end()}, {free.begin(), free.end()}, 0};
  if (command) {
    c.mode = CompiledConstraint::Mode::Compiled;
    c.command = *command;
    if (auto arb = compute_arborescence(build_bgraph(guard.kernel_only(), x)))
      c.arborescence_size = arb->arcs.size();
  }
  return c;
}

// First word of the text, skipping blank and comment lines.
std::string first_word(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      break;
    }
  }
  std::size_t j = i;
  while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '-' || text[j] == '_'))
    ++j;
  return std::string(text.substr(i, j - i));
}

void eliminate_internal(ConstraintAutomaton& a, std::vector<ProvenanceEntry>& log) {
  std::vector<std::string> internal;
  for (const auto& p : a.ports.all)
    if (a.ports.is_internal(p)) internal.push_back(p);
  std::string summary = "ports";
  for (const auto& p : internal) summary += " " + p;
  if (internal.empty()) summary += " none";
  log.push_back({"eliminate", summary});
  for (const auto& p : internal) {
    std::vector<EliminationRecord> records;
    a = eliminate(a, p, &records);
    for (const auto& r : records)
      log.push_back({"eliminate", r.port + " t" + std::to_string(r.transition) + " " +
                                      (r.determinant.empty() ? "exists" : r.determinant) + " " +
                                      std::to_string(r.literals_before) + " -> " +
                                      std::to_string(r.literals_after)});
  }
}

void apply_commandify(CompiledDocument& doc) {
  CompiledAutomaton c = commandify_automaton(doc.automaton);
  doc.automaton = c.automaton;
  doc.guards = c.guards;
  doc.commandified = true;
  doc.provenance.push_back({"commandify", "compiled " + std::to_string(c.guards.size() - c.fallback_count()) +
                                              " fallback " + std::to_string(c.fallback_count())});
  for (std::size_t i = 0; i < c.guards.size(); ++i) {
    const auto& g = c.guards[i];
    std::string d = "t" + std::to_string(i);
    if (g.compiled())
      d += " compiled arcs " + std::to_string(g.arborescence_size) + " statements " +
           std::to_string(g.command.length());
    else
      d += " fallback";
    doc.provenance.push_back({"commandify", d});
  }
}

bool has(const std::vector<Pass>& passes, Pass p) {
  return std::find(passes.begin(), passes.end(), p) != passes.end();
}

}  // namespace

CompiledAutomaton CompiledDocument::program() const {
  if (commandified) return CompiledAutomaton{automaton, guards};
  return uncompiled(automaton);
}

bool is_document_text(std::string_view text) { return first_word(text) == kMagic; }

std::string save_document(const CompiledDocument& doc) {
  std::string s = std::string(kMagic) + " " + std::to_string(CompiledDocument::kVersion) + "\n";
  s += std::string("form ") + (doc.commandified ? "commandified" : "plain") + "\n";
  for (const auto& e : doc.provenance) s += "log " + e.pass + " " + e.detail + "\n";
  if (!doc.commandified) return s + serialize_automaton(doc.automaton);
  return s + serialize_automaton(doc.automaton, [&](std::size_t i) -> std::string {
           const auto& g = doc.guards.at(i);
           if (!g.compiled()) return " fallback";
           return " do { " + g.command.str() + " }";
         });
}

CompiledDocument load_document(std::string_view text) {
  CompiledDocument doc;
  // Header lines are blanked out so token positions still match the text.
  std::string body(text);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_version = false, have_form = false;
  auto fail = [&](const std::string& msg) {
    throw ParseError(msg, line_no, 1);
  };
  while (pos < body.size()) {
    std::size_t end = body.find('\n', pos);
    if (end == std::string::npos) end = body.size();
    ++line_no;
    std::string line = body.substr(pos, end - pos);
    std::string word = first_word(line);
    if (word == "automaton") break;
    if (!word.empty()) {
      std::string rest = line.substr(line.find(word) + word.size());
      rest.erase(0, rest.find_first_not_of(' '));
      if (!have_version) {
        if (word != kMagic) fail("expected '" + std::string(kMagic) + " <version>'");
        if (rest != std::to_string(CompiledDocument::kVersion)) fail("unsupported document version '" + rest + "'");
        have_version = true;
      } else if (word == "form") {
        if (rest == "plain") doc.commandified = false;
        else if (rest == "commandified") doc.commandified = true;
        else fail("unknown form '" + rest + "'");
        have_form = true;
      } else if (word == "log") {
        auto space = rest.find(' ');
        if (space == std::string::npos) fail("log entry without detail");
        doc.provenance.push_back({rest.substr(0, space), rest.substr(space + 1)});
      } else {
        fail("unexpected '" + word + "' in the document header");
      }
    }
    std::fill(body.begin() + static_cast<std::ptrdiff_t>(pos), body.begin() + static_cast<std::ptrdiff_t>(end), ' ');
    pos = end + 1;
  }
  if (!have_version) throw ParseError("not a caf document", 1, 1);
  if (!have_form) throw ParseError("document header has no form line", line_no, 1);

  std::vector<std::optional<DataCommand>> commands;
  TokenStream ts(body);
  auto suffix = [&](TokenStream& s, std::size_t) {
    if (!doc.commandified) return;
    if (s.at_ident("fallback")) {
      s.next();
      commands.emplace_back();
      return;
    }
    s.expect_ident("do");
    s.expect(K::LBrace, "'{'");
    commands.emplace_back(parse_command(s));
    s.expect(K::RBrace, "'}'");
  };
  doc.automaton = parse_automaton(ts, suffix);
  ts.expect_end();
  if (!(canonicalize(doc.automaton) == doc.automaton))
    throw ParseError("transitions of '" + doc.automaton.name + "' are not in canonical order", line_no, 1);
  if (doc.commandified)
    for (std::size_t i = 0; i < commands.size(); ++i)
      doc.guards.push_back(restore(doc.automaton, doc.automaton.transitions[i].guard, commands[i]));
  return doc;
}

std::string pass_name(Pass p) { return p == Pass::Eliminate ? "eliminate" : "commandify"; }

std::vector<Pass> parse_passes(const std::string& list) {
  std::vector<Pass> out;
  if (list.empty() || list == "none") return out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t end = std::min(list.find(',', pos), list.size());
    std::string name = list.substr(pos, end - pos);
    Pass p;
    if (name == "eliminate") p = Pass::Eliminate;
    else if (name == "commandify") p = Pass::Commandify;
    else throw ConfigError("unknown pass '" + name + "' (expected eliminate or commandify)");
    if (has(out, p)) throw ConfigError("pass '" + name + "' given twice");
    out.push_back(p);
    pos = end + 1;
  }
  if (out.size() == 2 && out[0] == Pass::Commandify)
    throw ConfigError("eliminate cannot run after commandify");
  return out;
}

CompiledDocument compile_automaton(const ConstraintAutomaton& a, const std::vector<Pass>& passes) {
  CompiledDocument doc;
  doc.automaton = canonicalize(a);
  for (Pass p : passes) {
    if (p == Pass::Eliminate) {
      eliminate_internal(doc.automaton, doc.provenance);
      doc.automaton = canonicalize(doc.automaton);
    } else {
      apply_commandify(doc);
    }
  }
  return doc;
}

CompiledDocument compile_source(std::string_view text, const std::vector<Pass>& passes,
                                const ExtralogicalRegistry& reg) {
  std::string word = first_word(text);
  std::vector<ProvenanceEntry> log;
  ConstraintAutomaton a;
  if (word == kMagic) {
    CompiledDocument doc = load_document(text);
    if (passes.empty()) return doc;
    if (doc.commandified) throw ConfigError("document is already commandified");
    a = doc.automaton;
    log = doc.provenance;
  } else if (word == "automaton") {
    a = parse_automaton(text);
    log.push_back({"parse", "automaton " + a.name});
  } else if (word == "compose") {
    Composition c = parse_composition(text);
    log.push_back({"parse", "composition " + c.name});
    EvalOptions opts;
    std::vector<EliminationRecord> records;
    if (has(passes, Pass::Eliminate)) {
      opts.hide_as_elim = true;
      opts.log = &records;
    }
    a = eval_composition(c, opts, reg);
    a.name = c.name;
    if (has(passes, Pass::Eliminate)) {
      for (const auto& r : records)
        log.push_back({"eliminate", r.port + " hidden " + (r.determinant.empty() ? "exists" : r.determinant) +
                                        " " + std::to_string(r.literals_before) + " -> " +
                                        std::to_string(r.literals_after)});
    }
  } else {
    throw ParseError("expected 'automaton', 'compose' or '" + std::string(kMagic) + "' at the start of the input",
                     1, 1);
  }
  CompiledDocument doc = compile_automaton(a, passes);
  log.insert(log.end(), doc.provenance.begin(), doc.provenance.end());
  doc.provenance = std::move(log);
  return doc;
}

// ---------------------------------------------------------------------------

bool accepts(const CompiledConstraint& g, const DataAssignment& sigma, FiniteDomain dom,
             const ExtralogicalRegistry& reg) {
  VariableSet free(g.free_order.begin(), g.free_order.end());
  if (!g.compiled()) return entails(sigma.restricted_to(free), g.original, dom, reg);
  VariableSet x(g.uncontrolled.begin(), g.uncontrolled.end());
  auto r = exec(g.command, sigma.restricted_to(x), reg);
  return r && r->restricted_to(free) == sigma.restricted_to(free);
}

std::vector<TransitionVerdict> compare_transitions(const CompiledAutomaton& a, const CompiledAutomaton& b,
                                                   FiniteDomain dom, const ExtralogicalRegistry& reg) {
  using Key = std::tuple<std::string, PortSet, std::string>;
  auto key = [](const Transition& t) { return Key{t.source, t.sync, t.target}; };
  auto label = [](const Transition& t) { return t.source + " -> " + t.target + " " + sync_text(t.sync); };

  std::vector<Key> keys;
  std::map<Key, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
  const auto& ta = a.automaton.transitions;
  const auto& tb = b.automaton.transitions;
  std::map<Key, std::string> labels;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!groups.count(key(ta[i]))) keys.push_back(key(ta[i]));
    groups[key(ta[i])].first.push_back(i);
    labels.emplace(key(ta[i]), label(ta[i]));
  }
  for (std::size_t j = 0; j < tb.size(); ++j) {
    if (!groups.count(key(tb[j]))) keys.push_back(key(tb[j]));
    groups[key(tb[j])].second.push_back(j);
    labels.emplace(key(tb[j]), label(tb[j]));
  }

  auto any_accepts = [&](const CompiledAutomaton& m, const std::vector<std::size_t>& ids, const DataAssignment& s) {
    for (auto i : ids)
      if (accepts(m.guards[i], s, dom, reg)) return true;
    return false;
  };

  std::vector<TransitionVerdict> out;
  for (const auto& k : keys) {
    const auto& [ia, ib] = groups[k];
    VariableSet vars;
    for (auto i : ia) vars.insert(a.guards[i].free_order.begin(), a.guards[i].free_order.end());
    for (auto j : ib) vars.insert(b.guards[j].free_order.begin(), b.guards[j].free_order.end());
    TransitionVerdict v{labels[k], true, ""};
    for_each_assignment({vars.begin(), vars.end()}, dom, false, [&](const DataAssignment& s) {
      if (any_accepts(a, ia, s) == any_accepts(b, ib, s)) return true;
      v.equivalent = false;
      if (ia.empty())
        v.note = "no counterpart in the first automaton";
      else if (ib.empty())
        v.note = "no counterpart";
      else
        v.note = "guards differ on " + s.str();
      return false;
    });
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace caf
