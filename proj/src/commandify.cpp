#include "caf/commandify.hpp"

#include <algorithm>
#include <map>

#include "caf/error.hpp"

namespace caf {

namespace {

using Lit = DataLiteral;

// Literal-to-literal arcs of the arborescence, as indices into `lits`.
std::vector<std::pair<std::size_t, std::size_t>> split_arcs(const std::vector<Lit>& lits,
                                                            const Arborescence& arb) {
  auto index = [&](const LiteralVertex& v) -> std::optional<std::size_t> {
    if (v.kind != LiteralVertex::Kind::Lit) return std::nullopt;
    auto it = std::lower_bound(lits.begin(), lits.end(), *v.literal);
    if (it == lits.end() || !(*it == *v.literal)) return std::nullopt;
    return static_cast<std::size_t>(it - lits.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& a : arb.arcs) {
    auto h = index(arb.vertices[a.head]);
    if (!h) continue;
    for (auto t : a.tails)
      if (auto i = index(arb.vertices[t])) out.emplace_back(*i, *h);
  }
  return out;
}

std::vector<Lit> closure_of(const DataConstraint& phi) {
  auto s = symmetric_closure(phi);
  return {s.begin(), s.end()};
}

}  // namespace

std::set<std::pair<Lit, Lit>> strict_precedence(const DataConstraint& phi,
                                                 const Arborescence& arb) {
  auto lits = closure_of(phi);
  const std::size_t n = lits.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (auto [i, j] : split_arcs(lits, arb)) r[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (lits[i].is_var_equality())
      for (std::size_t j = 0; j < n; ++j)
        if (!lits[j].is_var_equality()) r[i][j] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  std::set<std::pair<Lit, Lit>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.emplace(lits[i], lits[j]);
  return out;
}

LinearizedPlan derive_plan(const DataConstraint& phi, const VariableSet& uncontrolled,
                           const Arborescence& arb) {
  auto lits = closure_of(phi);
  const std::size_t n = lits.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [i, j] : split_arcs(lits, arb)) {
    succ[i].push_back(j);
    ++indeg[j];
  }

  // Every x == t precedes every other literal, so the sort runs in two
  // phases instead of materializing those arcs.
  LinearizedPlan plan;
  for (bool equalities : {true, false}) {
    std::set<std::size_t> ready;
    std::size_t pending = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lits[i].is_var_equality() != equalities) continue;
      ++pending;
      if (indeg[i] == 0) ready.insert(i);
    }
    while (!ready.empty()) {
      std::size_t i = *ready.begin();
      ready.erase(ready.begin());
      plan.literals.push_back(lits[i]);
      --pending;
      for (auto j : succ[i])
        if (--indeg[j] == 0 && lits[j].is_var_equality() == equalities) ready.insert(j);
    }
    if (pending != 0) throw InternalError("strict precedence of '" + phi.str() + "' has a cycle");
    if (equalities) plan.n = plan.literals.size();
  }

  auto problems = plan_violations(phi, uncontrolled, plan);
  if (!problems.empty())
    throw InternalError("plan for '" + phi.str() + "' violates: " + problems.front());
  return plan;
}

std::vector<std::string> plan_violations(const DataConstraint& phi,
                                         const VariableSet& uncontrolled,
                                         const LinearizedPlan& plan) {
  std::vector<std::string> out;
  auto lits = symmetric_closure(phi);
  std::set<Lit> seen(plan.literals.begin(), plan.literals.end());
  if (seen != lits || seen.size() != plan.literals.size())
    out.push_back("plan is not an ordering of the symmetric closure");
  if (plan.n > plan.literals.size()) {
    out.push_back("equality prefix longer than the plan");
    return out;
  }

  std::map<DataVariable, std::size_t> first_eq;
  for (std::size_t i = 0; i < plan.n; ++i) {
    const Lit& l = plan.literals[i];
    if (!l.is_var_equality()) {
      out.push_back("'" + l.str() + "' in the equality prefix is not x == t");
      continue;
    }
    first_eq.emplace(l.lhs().variable(), i);
  }

  VariableSet vars;
  for (const auto& l : lits) l.collect_variables(vars);
  for (const auto& v : vars)
    if (!uncontrolled.count(v) && !first_eq.count(v))
      out.push_back("no equality gives " + v.str() + " a value");

  for (std::size_t i = 0; i < plan.literals.size(); ++i) {
    const Lit& l = plan.literals[i];
    if (!l.is_var_equality()) continue;
    for (const auto& v : l.rhs().variables()) {
      if (uncontrolled.count(v)) continue;
      auto it = first_eq.find(v);
      if (it == first_eq.end() || it->second >= i)
        out.push_back("'" + l.str() + "' needs " + v.str() + " before it");
    }
  }
  return out;
}

DataCommand translate(const VariableSet& uncontrolled, const LinearizedPlan& plan) {
  std::vector<DataCommand> parts{DataCommand::skip()};
  VariableSet assigned = uncontrolled;
  for (std::size_t i = 0; i < plan.literals.size(); ++i) {
    const Lit& l = plan.literals[i];
    if (i < plan.n && assigned.insert(l.lhs().variable()).second)
      parts.push_back(DataCommand::assign(l.lhs().variable(), l.rhs()));
    else
      parts.push_back(DataCommand::fail_unless(DataConstraint(l)));
  }
  return DataCommand::sequence(parts);
}

DataCommand dedup_failures(const DataCommand& pi) {
  std::vector<DataCommand> kept;
  std::set<Lit> known;
  for (const auto& s : pi.statements()) {
    if (s.kind() == DataCommand::Kind::Assign) {
      const DataVariable& x = s.target();
      std::erase_if(known, [&](const Lit& l) { return l.mentions(x); });
      if (!s.term().mentions(x)) known.insert(Lit::eq(DataTerm::var(x), s.term()));
    } else if (s.kind() == DataCommand::Kind::FailUnless &&
               s.first().kind() == DataCommand::Kind::Skip && s.guard().kernel().size() == 1 &&
               s.guard().kernel()[0].is_equality()) {
      const Lit& l = s.guard().kernel()[0];
      if (known.count(l.flipped())) continue;
      known.insert(l);
    }
    kept.push_back(s);
  }
  return DataCommand::sequence(kept);
}

// ---------------------------------------------------------------------------

CompiledConstraint commandify_constraint(const DataConstraint& phi,
                                         const VariableSet& uncontrolled) {
  CompiledConstraint c{phi, CompiledConstraint::Mode::SolverFallback, DataCommand::skip(), {}, {}, 0};
  auto free = phi.free_variables();
  c.free_order.assign(free.begin(), free.end());
  c.uncontrolled.assign(uncontrolled.begin(), uncontrolled.end());
  if (!std::includes(free.begin(), free.end(), uncontrolled.begin(), uncontrolled.end()))
    return c;
  auto kernel = phi.kernel_only();
  auto arb = compute_arborescence(build_bgraph(kernel, uncontrolled));
  if (!arb) return c;
  c.mode = CompiledConstraint::Mode::Compiled;
  c.arborescence_size = arb->arcs.size();
  c.command = dedup_failures(translate(uncontrolled, derive_plan(kernel, uncontrolled, *arb)));
  return c;
}

VariableSet uncontrolled_variables(const ConstraintAutomaton& a, const DataConstraint& phi) {
  VariableSet out;
  for (const auto& v : phi.free_variables()) {
    if (v.kind == DataVariable::Kind::Port ? a.ports.is_input(v.name)
                                           : v.kind == DataVariable::Kind::MemPre)
      out.insert(v);
  }
  return out;
}

std::size_t CompiledAutomaton::fallback_count() const {
  return static_cast<std::size_t>(
      std::count_if(guards.begin(), guards.end(), [](const auto& g) { return !g.compiled(); }));
}

CompiledAutomaton commandify_automaton(const ConstraintAutomaton& a) {
  require_valid(a);
  CompiledAutomaton c{canonicalize(a), {}};
  for (const auto& t : c.automaton.transitions)
    c.guards.push_back(commandify_constraint(t.guard, uncontrolled_variables(c.automaton, t.guard)));
  return c;
}

bool is_arborescent(const ConstraintAutomaton& a) {
  for (const auto& t : a.transitions) {
    auto x = uncontrolled_variables(a, t.guard);
    if (!compute_arborescence(build_bgraph(t.guard.kernel_only(), x))) return false;
  }
  return true;
}

}  // namespace caf
