#include "caf/eliminate.hpp"

#include "caf/error.hpp"

namespace caf {

std::set<DataTerm> determinants(const DataVariable& x, const DataConstraint& phi) {
  std::set<DataTerm> out;
  if (phi.is_quantified(x)) return out;
  for (const auto& l : phi.kernel()) {
    if (!l.is_equality()) continue;
    if (l.lhs().is_var(x) && !l.rhs().mentions(x)) out.insert(l.rhs());
    if (l.rhs().is_var(x) && !l.lhs().mentions(x)) out.insert(l.lhs());
  }
  return out;
}

DataConstraint syn_exists(const DataVariable& x, const DataConstraint& phi) {
  auto ds = determinants(x, phi);
  if (ds.empty()) return exists(x, phi);
  const DataTerm& t = *ds.begin();
  std::vector<DataLiteral> kernel;
  kernel.reserve(phi.kernel().size());
  for (const auto& l : phi.kernel()) kernel.push_back(l.substitute(x, t));
  return DataConstraint(phi.quantified(), std::move(kernel));
}

ConstraintAutomaton eliminate(const ConstraintAutomaton& a, const std::string& port,
                              std::vector<EliminationRecord>* log) {
  if (!a.ports.all.count(port))
    throw AutomatonError("cannot eliminate unknown port '" + port + "' of '" + a.name + "'");
  ConstraintAutomaton r = a;
  r.ports.all.erase(port);
  r.ports.inputs.erase(port);
  r.ports.outputs.erase(port);
  auto x = DataVariable::port(port);
  for (std::size_t i = 0; i < r.transitions.size(); ++i) {
    auto& t = r.transitions[i];
    t.sync.erase(port);
    if (!t.guard.free_variables().count(x)) continue;
    auto ds = determinants(x, t.guard);
    DataConstraint raw = syn_exists(x, t.guard);
    DataConstraint simple = simplify_trivial(raw);
    if (log)
      log->push_back(EliminationRecord{port, i, ds.empty() ? "" : ds.begin()->str(),
                                       t.guard.kernel().size(), simple.kernel().size(),
                                       raw.str()});
    t.guard = std::move(simple);
  }
  return r;
}

PortSet ever_determined(const ConstraintAutomaton& a) {
  PortSet out;
  for (const auto& p : a.ports.all) {
    auto x = DataVariable::port(p);
    bool ok = true;
    for (const auto& t : a.transitions) {
      if (t.guard.free_variables().count(x) && determinants(x, t.guard).empty()) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(p);
  }
  return out;
}

}  // namespace caf
