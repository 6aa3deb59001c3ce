#include "caf/automaton.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "caf/error.hpp"

namespace caf {

std::string sync_text(const PortSet& sync) {
  std::string s = "{";
  bool first = true;
  for (const auto& p : sync) {
    if (!first) s += ", ";
    s += p;
    first = false;
  }
  return s + "}";
}

std::vector<std::string> validate(const ConstraintAutomaton& a) {
  std::vector<std::string> out;
  if (a.states.empty()) out.push_back("automaton has no states");
  if (!a.states.count(a.initial)) out.push_back("initial state '" + a.initial + "' is not a state");
  for (const auto& p : a.ports.inputs) {
    if (!a.ports.all.count(p)) out.push_back("input port '" + p + "' missing from the port set");
    if (a.ports.outputs.count(p)) out.push_back("port '" + p + "' is both input and output");
  }
  for (const auto& p : a.ports.outputs)
    if (!a.ports.all.count(p)) out.push_back("output port '" + p + "' missing from the port set");
  for (const auto& [m, d] : a.initial_memory)
    if (!a.memory.count(m)) out.push_back("initial value for unknown memory cell '" + m + "'");

  for (std::size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& t = a.transitions[i];
    std::string where = "transition " + std::to_string(i) + " (" + t.source + " -> " +
                        t.target + " on " + sync_text(t.sync) + ")";
    if (!a.states.count(t.source)) out.push_back(where + ": unknown source state");
    if (!a.states.count(t.target)) out.push_back(where + ": unknown target state");
    for (const auto& p : t.sync)
      if (!a.ports.all.count(p)) out.push_back(where + ": unknown port '" + p + "'");
    for (const auto& v : t.guard.free_variables()) {
      if (v.is_port()) {
        if (!t.sync.count(v.name))
          out.push_back(where + ": guard mentions port '" + v.name + "' outside the sync set");
      } else if (!a.memory.count(v.name)) {
        out.push_back(where + ": guard mentions unknown memory cell '" + v.name + "'");
      }
    }
  }
  return out;
}

void require_valid(const ConstraintAutomaton& a) {
  auto v = validate(a);
  if (v.empty()) return;
  std::string msg = "invalid automaton '" + a.name + "':";
  for (const auto& s : v) msg += "\n  " + s;
  throw AutomatonError(msg);
}

ConstraintAutomaton canonicalize(ConstraintAutomaton a) {
  auto key = [](const Transition& t) {
    return std::make_tuple(std::cref(t.source), sync_text(t.sync), std::cref(t.target),
                           t.guard.str());
  };
  std::sort(a.transitions.begin(), a.transitions.end(),
            [&](const Transition& x, const Transition& y) { return key(x) < key(y); });
  a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                      a.transitions.end());
  return a;
}

// ---------------------------------------------------------------------------

namespace {

PortSet intersect(const PortSet& a, const PortSet& b) {
  PortSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool disjoint(const PortSet& a, const PortSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else return false;
  }
  return true;
}

DataConstraint conjoin_guards(const DataConstraint& g1, const DataConstraint& g2) {
  DataConstraint g = conjoin(g1, g2);
  std::vector<DataLiteral> kernel;
  for (const auto& l : g.kernel())
    if (l.shape() != DataLiteral::Shape::Top || l.negated()) kernel.push_back(l);
  if (kernel.empty() || kernel.size() == g.kernel().size()) return g;
  return DataConstraint(g.quantified(), std::move(kernel));
}

}  // namespace

ConstraintAutomaton join(const ConstraintAutomaton& a1, const ConstraintAutomaton& a2,
                         const JoinLimits& limits) {
  for (const auto& m : a1.memory)
    if (a2.memory.count(m))
      throw AutomatonError("cannot join '" + a1.name + "' and '" + a2.name +
                           "': both use memory cell '" + m + "'");
  PortSet shared = intersect(a1.ports.all, a2.ports.all);
  for (const auto& p : shared)
    if (a1.ports.is_internal(p) || a2.ports.is_internal(p))
      throw AutomatonError("cannot join '" + a1.name + "' and '" + a2.name +
                           "' on internal port '" + p + "'");

  ConstraintAutomaton r;
  r.name = a1.name + "_" + a2.name;
  r.memory = a1.memory;
  r.memory.insert(a2.memory.begin(), a2.memory.end());
  r.initial_memory = a1.initial_memory;
  r.initial_memory.insert(a2.initial_memory.begin(), a2.initial_memory.end());
  r.ports.all = a1.ports.all;
  r.ports.all.insert(a2.ports.all.begin(), a2.ports.all.end());
  for (const auto& p : r.ports.all) {
    bool in1 = a1.ports.all.count(p), in2 = a2.ports.all.count(p);
    bool input = (!in1 || a1.ports.is_input(p)) && (!in2 || a2.ports.is_input(p));
    bool output = (!in1 || a1.ports.is_output(p)) && (!in2 || a2.ports.is_output(p));
    if (input) r.ports.inputs.insert(p);
    if (output) r.ports.outputs.insert(p);
  }

  std::map<std::string, std::vector<const Transition*>> out1, out2;
  for (const auto& t : a1.transitions) out1[t.source].push_back(&t);
  for (const auto& t : a2.transitions) out2[t.source].push_back(&t);
  const std::vector<const Transition*> none;
  auto from = [&](const auto& m, const std::string& q) -> const std::vector<const Transition*>& {
    auto it = m.find(q);
    return it == m.end() ? none : it->second;
  };

  std::deque<std::pair<std::string, std::string>> work;
  auto visit = [&](const std::string& q1, const std::string& q2) {
    std::string name = q1 + "|" + q2;
    if (r.states.insert(name).second) {
      if (r.states.size() > limits.max_states)
        throw AutomatonError("join of '" + a1.name + "' and '" + a2.name + "' exceeds " +
                             std::to_string(limits.max_states) + " states");
      work.emplace_back(q1, q2);
    }
    return name;
  };
  auto emit = [&](std::string source, PortSet sync, DataConstraint guard, std::string target) {
    r.transitions.push_back(
        Transition{std::move(source), std::move(sync), std::move(guard), std::move(target)});
    if (r.transitions.size() > limits.max_transitions)
      throw AutomatonError("join of '" + a1.name + "' and '" + a2.name + "' exceeds " +
                           std::to_string(limits.max_transitions) + " transitions");
  };

  r.initial = visit(a1.initial, a2.initial);
  while (!work.empty()) {
    auto [q1, q2] = work.front();
    work.pop_front();
    std::string here = q1 + "|" + q2;
    const auto& ts1 = from(out1, q1);
    const auto& ts2 = from(out2, q2);
    for (const Transition* t1 : ts1) {
      PortSet s1 = intersect(t1->sync, a2.ports.all);
      if (s1.empty()) emit(here, t1->sync, t1->guard, visit(t1->target, q2));
      for (const Transition* t2 : ts2) {
        if (intersect(t2->sync, a1.ports.all) != s1) continue;
        PortSet sync = t1->sync;
        sync.insert(t2->sync.begin(), t2->sync.end());
        emit(here, std::move(sync), conjoin_guards(t1->guard, t2->guard),
             visit(t1->target, t2->target));
      }
    }
    for (const Transition* t2 : ts2)
      if (disjoint(t2->sync, a1.ports.all)) emit(here, t2->sync, t2->guard, visit(q1, t2->target));
  }
  return r;
}

ConstraintAutomaton hide(const ConstraintAutomaton& a, const std::string& port) {
  if (!a.ports.all.count(port))
    throw AutomatonError("cannot hide unknown port '" + port + "' of '" + a.name + "'");
  ConstraintAutomaton r = a;
  r.ports.all.erase(port);
  r.ports.inputs.erase(port);
  r.ports.outputs.erase(port);
  auto x = DataVariable::port(port);
  for (auto& t : r.transitions) {
    t.sync.erase(port);
    t.guard = exists(x, t.guard);
  }
  return r;
}

}  // namespace caf
