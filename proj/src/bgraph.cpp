#include "caf/bgraph.hpp"

#include <algorithm>
#include <map>

namespace caf {

namespace {

std::optional<std::size_t> find_vertex(const std::vector<LiteralVertex>& vs, const LiteralVertex& v) {
  auto it = std::lower_bound(vs.begin(), vs.end(), v);
  if (it == vs.end() || !(*it == v)) return std::nullopt;
  return static_cast<std::size_t>(it - vs.begin());
}

bool subset(const VariableSet& a, const VariableSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VariableSet rhs_variables(const DataLiteral& l) { return l.rhs().variables(); }

}  // namespace

std::optional<std::size_t> PrecedenceRelation::index_of(const LiteralVertex& v) const {
  return find_vertex(vertices, v);
}

bool PrecedenceRelation::precedes(const LiteralVertex& a, const LiteralVertex& b) const {
  auto i = index_of(a), j = index_of(b);
  return i && j && arcs.count({*i, *j});
}

PrecedenceRelation precedence_digraph(const DataConstraint& phi, const VariableSet& uncontrolled) {
  PrecedenceRelation r;
  r.vertices.push_back(LiteralVertex::star());
  for (const auto& l : symmetric_closure(phi)) r.vertices.push_back(LiteralVertex::lit(l));
  const std::size_t n = r.vertices.size();

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 1; i < n; ++i) {
    const DataLiteral& li = *r.vertices[i].literal;
    if (!li.is_var_equality()) continue;
    const DataVariable& x = li.lhs().variable();
    for (std::size_t j = 1; j < n; ++j) {
      const DataLiteral& lj = *r.vertices[j].literal;
      if (lj.mentions(x) || !lj.is_var_equality()) reach[i][j] = true;
    }
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = 1; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 1; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;

  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j)
      if (reach[i][j]) r.arcs.insert({i, j});
  for (std::size_t j = 1; j < n; ++j) {
    const DataLiteral& l = *r.vertices[j].literal;
    if (subset(l.variables(), uncontrolled) ||
        (l.is_var_equality() && subset(rhs_variables(l), uncontrolled)))
      r.arcs.insert({0, j});
  }
  return r;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> BGraph::index_of(const LiteralVertex& v) const {
  return find_vertex(vertices, v);
}

std::string BGraph::str() const {
  std::string s;
  for (const auto& a : arcs) {
    s += "{";
    for (std::size_t i = 0; i < a.tails.size(); ++i)
      s += (i ? ", " : "") + vertices[a.tails[i]].str();
    s += "} -> " + vertices[a.head].str() + "\n";
  }
  return s;
}

namespace {

// Adds one arc per choice of an equality vertex for each variable in `vars`.
void add_arcs(std::size_t head, const VariableSet& vars,
              const std::map<DataVariable, std::vector<std::size_t>>& eqs, std::set<BArc>& out) {
  if (vars.empty()) {
    out.insert(BArc{{0}, head});
    return;
  }
  std::vector<const std::vector<std::size_t>*> choices;
  for (const auto& v : vars) {
    auto it = eqs.find(v);
    if (it == eqs.end()) return;
    choices.push_back(&it->second);
  }
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    BArc a{{}, head};
    for (std::size_t i = 0; i < choices.size(); ++i) a.tails.push_back((*choices[i])[pick[i]]);
    std::sort(a.tails.begin(), a.tails.end());
    out.insert(std::move(a));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
    if (i == pick.size()) return;
  }
}

}  // namespace

BGraph build_bgraph(const DataConstraint& phi, const VariableSet& uncontrolled) {
  BGraph g;
  auto lits = symmetric_closure(phi);
  g.vertices.push_back(LiteralVertex::star());
  for (const auto& l : lits) g.vertices.push_back(LiteralVertex::lit(l));
  for (const auto& x : uncontrolled) {
    auto v = LiteralVertex::self_eq(x);
    if (!lits.count(*v.literal)) g.vertices.push_back(std::move(v));
  }
  std::sort(g.vertices.begin() + 1, g.vertices.end());

  std::map<DataVariable, std::vector<std::size_t>> eqs;
  for (std::size_t i = 1; i < g.vertices.size(); ++i) {
    const DataLiteral& l = *g.vertices[i].literal;
    if (l.is_var_equality()) eqs[l.lhs().variable()].push_back(i);
  }

  std::set<BArc> arcs;
  for (std::size_t i = 1; i < g.vertices.size(); ++i) {
    const LiteralVertex& v = g.vertices[i];
    const DataLiteral& l = *v.literal;
    if (v.kind == LiteralVertex::Kind::Lit) {
      add_arcs(i, l.variables(), eqs, arcs);
      if (l.is_var_equality()) add_arcs(i, rhs_variables(l), eqs, arcs);
    }
    if (l.is_trivial() && l.lhs().is_var() && uncontrolled.count(l.lhs().variable()))
      arcs.insert(BArc{{0}, i});
  }
  g.arcs.assign(arcs.begin(), arcs.end());
  return g;
}

// ---------------------------------------------------------------------------

const BArc* Arborescence::incoming(std::size_t head) const {
  for (const auto& a : arcs)
    if (a.head == head) return &a;
  return nullptr;
}

std::optional<Arborescence> compute_arborescence(const BGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::vector<std::size_t>> by_tail(n);
  std::vector<std::size_t> remaining(g.arcs.size());
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    remaining[a] = g.arcs[a].tails.size();
    for (auto t : g.arcs[a].tails) by_tail[t].push_back(a);
  }

  Arborescence arb;
  arb.vertices = g.vertices;
  std::vector<bool> done(n, false);
  std::vector<std::optional<std::size_t>> best(n);
  std::vector<std::size_t> frontier{0};
  done[0] = true;
  std::size_t covered = 1;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto v : frontier) {
      for (auto a : by_tail[v]) {
        if (--remaining[a] != 0) continue;
        std::size_t h = g.arcs[a].head;
        if (done[h]) continue;
        if (!best[h]) next.push_back(h);
        if (!best[h] || a < *best[h]) best[h] = a;
      }
    }
    std::sort(next.begin(), next.end());
    for (auto h : next) {
      done[h] = true;
      arb.arcs.push_back(g.arcs[*best[h]]);
    }
    covered += next.size();
    frontier = std::move(next);
  }
  if (covered != n) return std::nullopt;
  return arb;
}

std::vector<std::string> check_arborescence(const Arborescence& arb) {
  std::vector<std::string> problems;
  const std::size_t n = arb.vertices.size();
  std::vector<std::size_t> in(n, 0);
  for (const auto& a : arb.arcs) {
    if (a.head >= n || a.tails.empty()) {
      problems.push_back("malformed arc");
      continue;
    }
    ++in[a.head];
  }
  if (n > 0 && in[0] != 0) problems.push_back("root has an incoming arc");
  for (std::size_t v = 1; v < n; ++v)
    if (in[v] != 1)
      problems.push_back(arb.vertices[v].str() + " has " + std::to_string(in[v]) + " incoming arcs");

  std::vector<bool> reached(n, false);
  if (n > 0) reached[0] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : arb.arcs) {
      if (a.head >= n || reached[a.head]) continue;
      bool ok = std::all_of(a.tails.begin(), a.tails.end(),
                            [&](std::size_t t) { return t < n && reached[t]; });
      if (ok) reached[a.head] = changed = true;
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!reached[v]) problems.push_back(arb.vertices[v].str() + " is unreachable from the root");
  return problems;
}

}  // namespace caf
