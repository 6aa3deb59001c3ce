#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "caf/error.hpp"
#include "caf/runtime.hpp"

namespace caf {

namespace {

struct Label {
  PortSet sync;
  std::vector<Datum> values;

  friend auto operator<=>(const Label&, const Label&) = default;
};

using Edges = std::vector<std::pair<Label, std::size_t>>;

// Shared between both automata so equal trees get equal ids.
class Interner {
 public:
  std::size_t id(Edges e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return ids_.emplace(std::move(e), ids_.size()).first->second;
  }

 private:
  std::map<Edges, std::size_t> ids_;
};

class Explorer {
 public:
  Explorer(const CompiledAutomaton& a, FiniteDomain dom, const ExtralogicalRegistry& reg, Interner& in)
      : a_(a), dom_(dom), reg_(reg), in_(in) {}

  std::size_t tree(const std::string& q, const MemoryStore& mem, std::size_t depth) {
    if (depth == 0) return in_.id({});
    auto key = std::make_tuple(q, mem, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Edges edges;
    const auto& ts = a_.automaton.transitions;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i].source != q) continue;
      for_each_firing(i, mem, [&](const Label& l, const MemoryStore& next) {
        edges.emplace_back(l, tree(ts[i].target, next, depth - 1));
      });
    }
    std::size_t r = in_.id(std::move(edges));
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  template <typename F>
  void for_each_firing(std::size_t i, const MemoryStore& mem, F&& emit) {
    const Transition& t = a_.automaton.transitions[i];
    const CompiledConstraint& g = a_.guards[i];
    const PortTriple& ports = a_.automaton.ports;
    auto free = t.guard.free_variables();

    DataAssignment pre;
    std::vector<DataVariable> inputs;
    for (const auto& v : free) {
      if (v.kind == DataVariable::Kind::MemPre) {
        const auto& cell = mem.at(v.name);
        if (!cell) return;
        pre.set(v, *cell);
      } else if (v.kind == DataVariable::Kind::Port && ports.is_input(v.name)) {
        inputs.push_back(v);
      }
    }

    std::vector<DataAssignment> solutions;
    if (g.compiled()) {
      for_each_assignment(inputs, dom_, false, [&](const DataAssignment& x) {
        DataAssignment sigma = pre;
        for (const auto& b : x) sigma.set(b.first, b.second);
        if (auto r = exec(g.command, sigma, reg_)) solutions.push_back(r->restricted_to(free));
        return true;
      });
    } else {
      for (auto& s : all_solutions(t.guard, pre, dom_, reg_)) {
        bool in_domain = true;
        for (const auto& v : inputs) {
          Datum d = *s.get(v);
          if (d < 0 || d >= dom_.size()) in_domain = false;
        }
        if (in_domain) solutions.push_back(std::move(s));
      }
    }

    PortSet visible;
    std::vector<DataVariable> unconstrained;
    for (const auto& p : t.sync) {
      if (ports.is_internal(p)) continue;
      visible.insert(p);
      if (!free.count(DataVariable::port(p))) unconstrained.push_back(DataVariable::port(p));
    }
    // A cell the guard does not write may hold any value afterwards.
    for (const auto& [cell, value] : mem)
      if (!free.count(DataVariable::post(cell))) unconstrained.push_back(DataVariable::post(cell));

    for (const auto& s : solutions) {
      for_each_assignment(unconstrained, dom_, false, [&](const DataAssignment& extra) {
        MemoryStore next = mem;
        for (const auto* part : {&s, &extra})
          for (const auto& b : *part)
            if (b.first.kind == DataVariable::Kind::MemPost) next[b.first.name] = b.second;
        Label l{visible, {}};
        for (const auto& p : visible) {
          auto v = DataVariable::port(p);
          l.values.push_back(s.get(v) ? *s.get(v) : *extra.get(v));
        }
        emit(l, next);
        return true;
      });
    }
  }

  const CompiledAutomaton& a_;
  FiniteDomain dom_;
  const ExtralogicalRegistry& reg_;
  Interner& in_;
  std::map<std::tuple<std::string, MemoryStore, std::size_t>, std::size_t> memo_;
};

}  // namespace

bool bounded_trace_equivalent(const CompiledAutomaton& a1, const CompiledAutomaton& a2, std::size_t depth,
                              FiniteDomain dom, const ExtralogicalRegistry& reg) {
  const auto& p1 = a1.automaton.ports;
  const auto& p2 = a2.automaton.ports;
  if (p1.inputs != p2.inputs || p1.outputs != p2.outputs)
    throw AutomatonError("'" + a1.automaton.name + "' and '" + a2.automaton.name +
                         "' have different external ports");
  Interner in;
  Explorer e1(a1, dom, reg, in), e2(a2, dom, reg, in);
  auto s1 = initial_state(a1.automaton);
  auto s2 = initial_state(a2.automaton);
  return e1.tree(s1.current, s1.memory, depth) == e2.tree(s2.current, s2.memory, depth);
}

bool bounded_trace_equivalent(const ConstraintAutomaton& a1, const ConstraintAutomaton& a2,
                              std::size_t depth, FiniteDomain dom, const ExtralogicalRegistry& reg) {
  return bounded_trace_equivalent(uncompiled(a1), uncompiled(a2), depth, dom, reg);
}

}  // namespace caf
