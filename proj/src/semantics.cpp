#include "caf/semantics.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace caf {

DataAssignment::DataAssignment(std::initializer_list<Binding> bindings) {
  for (const auto& [v, d] : bindings) set(v, d);
}

std::optional<Datum> DataAssignment::get(const DataVariable& v) const {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const DataVariable& x) { return b.first < x; });
  if (it == bindings_.end() || it->first != v) return std::nullopt;
  return it->second;
}

void DataAssignment::set(const DataVariable& v, Datum d) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const DataVariable& x) { return b.first < x; });
  if (it != bindings_.end() && it->first == v)
    it->second = d;
  else
    bindings_.insert(it, Binding{v, d});
}

void DataAssignment::erase(const DataVariable& v) {
  auto it = std::lower_bound(bindings_.begin(), bindings_.end(), v,
                             [](const Binding& b, const DataVariable& x) { return b.first < x; });
  if (it != bindings_.end() && it->first == v) bindings_.erase(it);
}

VariableSet DataAssignment::domain() const {
  VariableSet out;
  for (const auto& b : bindings_) out.insert(out.end(), b.first);
  return out;
}

DataAssignment DataAssignment::restricted_to(const VariableSet& vars) const {
  DataAssignment out;
  for (const auto& b : bindings_)
    if (vars.count(b.first)) out.bindings_.push_back(b);
  return out;
}

bool DataAssignment::subset_of(const DataAssignment& other) const {
  return std::all_of(bindings_.begin(), bindings_.end(), [&](const Binding& b) {
    return other.get(b.first) == b.second;
  });
}

std::string DataAssignment::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (i) s += ", ";
    s += bindings_[i].first.str() + "=" + std::to_string(bindings_[i].second);
  }
  return s + "}";
}

FiniteDomain::FiniteDomain(int size) : size_(size) {
  if (size < 1) throw std::invalid_argument("domain size must be at least 1");
}

// ---------------------------------------------------------------------------

std::optional<Datum> evaluate(const DataAssignment& sigma, const DataTerm& t,
                              const ExtralogicalRegistry& reg) {
  switch (t.tag()) {
    case DataTerm::Tag::Var:
      return sigma.get(t.variable());
    case DataTerm::Tag::Const:
      return t.value();
    case DataTerm::Tag::App: {
      const auto& entry = reg.function(t.function());
      std::vector<Datum> args;
      args.reserve(t.args().size());
      bool nil = false;
      for (const auto& a : t.args()) {
        auto v = evaluate(sigma, a, reg);
        if (!v) nil = true;
        else args.push_back(*v);
      }
      if (nil) return std::nullopt;
      return entry.fn(args);
    }
  }
  return std::nullopt;
}

namespace {

bool atom_holds(const DataAssignment& sigma, const DataLiteral& l,
                const ExtralogicalRegistry& reg) {
  switch (l.shape()) {
    case DataLiteral::Shape::Bot:
      return false;
    case DataLiteral::Shape::Top:
      return true;
    case DataLiteral::Shape::Eq: {
      auto a = evaluate(sigma, l.lhs(), reg);
      if (!a) return false;
      auto b = evaluate(sigma, l.rhs(), reg);
      return b && *a == *b;
    }
    case DataLiteral::Shape::Rel: {
      const auto& entry = reg.relation(l.relation());
      std::vector<Datum> args;
      args.reserve(l.terms().size());
      for (const auto& t : l.terms()) {
        auto v = evaluate(sigma, t, reg);
        if (!v) return false;
        args.push_back(*v);
      }
      return entry.holds(args);
    }
  }
  return false;
}

bool all_bound(const DataAssignment& sigma, const DataTerm& t) {
  switch (t.tag()) {
    case DataTerm::Tag::Var:
      return sigma.contains(t.variable());
    case DataTerm::Tag::Const:
      return true;
    case DataTerm::Tag::App:
      return std::all_of(t.args().begin(), t.args().end(),
                         [&](const DataTerm& a) { return all_bound(sigma, a); });
  }
  return false;
}

}  // namespace

bool entails(const DataAssignment& sigma, const DataLiteral& literal,
             const ExtralogicalRegistry& reg) {
  if (!literal.negated()) return atom_holds(sigma, literal, reg);
  for (const auto& t : literal.terms())
    if (!all_bound(sigma, t)) return false;
  return !atom_holds(sigma, literal, reg);
}

// ---------------------------------------------------------------------------

namespace {

class Search {
 public:
  Search(std::span<const DataLiteral> literals, DataAssignment& sigma,
         const std::vector<DataVariable>& unknowns, FiniteDomain dom,
         const ExtralogicalRegistry& reg,
         const std::function<bool(const DataAssignment&)>& visit)
      : literals_(literals), sigma_(sigma), unknowns_(unknowns), dom_(dom), reg_(reg),
        visit_(visit), lits_of_(unknowns.size()), pending_(literals.size(), 0),
        bound_(unknowns.size(), false) {
    for (std::size_t i = 0; i < literals_.size(); ++i) {
      auto vars = literals_[i].variables();
      for (std::size_t u = 0; u < unknowns_.size(); ++u) {
        if (vars.count(unknowns_[u])) {
          lits_of_[u].push_back(i);
          ++pending_[i];
        }
      }
    }
  }

  void run() {
    for (std::size_t i = 0; i < literals_.size(); ++i)
      if (pending_[i] == 0 && !entails(sigma_, literals_[i], reg_)) return;
    descend(0);
  }

 private:
  void descend(std::size_t nbound) {
    if (stopped_) return;
    if (nbound == unknowns_.size()) {
      stopped_ = !visit_(sigma_);
      return;
    }
    auto [u, forced] = choose();
    if (forced) {
      attempt(u, *forced, nbound);
      return;
    }
    for (Datum d = 0; d < dom_.size() && !stopped_; ++d) attempt(u, d, nbound);
  }

  void attempt(std::size_t u, Datum d, std::size_t nbound) {
    sigma_.set(unknowns_[u], d);
    bound_[u] = true;
    bool ok = true;
    for (std::size_t i : lits_of_[u]) {
      if (--pending_[i] == 0 && ok && !entails(sigma_, literals_[i], reg_)) ok = false;
    }
    if (ok) descend(nbound + 1);
    for (std::size_t i : lits_of_[u]) ++pending_[i];
    bound_[u] = false;
    sigma_.erase(unknowns_[u]);
  }

  std::optional<std::size_t> unbound_index(const DataTerm& t) const {
    if (!t.is_var()) return std::nullopt;
    for (std::size_t u = 0; u < unknowns_.size(); ++u)
      if (!bound_[u] && unknowns_[u] == t.variable()) return u;
    return std::nullopt;
  }

  std::pair<std::size_t, std::optional<Datum>> choose() const {
    for (std::size_t i = 0; i < literals_.size(); ++i) {
      const auto& l = literals_[i];
      if (pending_[i] == 0 || !l.is_equality()) continue;
      for (int side = 0; side < 2; ++side) {
        const DataTerm& x = side == 0 ? l.lhs() : l.rhs();
        const DataTerm& t = side == 0 ? l.rhs() : l.lhs();
        auto u = unbound_index(x);
        if (!u || t.mentions(x.variable())) continue;
        if (auto v = evaluate(sigma_, t, reg_)) return {*u, v};
      }
    }
    std::size_t best = unknowns_.size();
    for (std::size_t u = 0; u < unknowns_.size(); ++u)
      if (!bound_[u] && (best == unknowns_.size() || unknowns_[u] < unknowns_[best])) best = u;
    return {best, std::nullopt};
  }

  std::span<const DataLiteral> literals_;
  DataAssignment& sigma_;
  const std::vector<DataVariable>& unknowns_;
  FiniteDomain dom_;
  const ExtralogicalRegistry& reg_;
  const std::function<bool(const DataAssignment&)>& visit_;
  std::vector<std::vector<std::size_t>> lits_of_;
  std::vector<std::size_t> pending_;
  std::vector<bool> bound_;
  bool stopped_ = false;
};

struct Opened {
  std::vector<DataLiteral> kernel;
  std::vector<DataVariable> quantified;
};

// Kernel and quantified variables of phi, with quantified variables that
// sigma binds renamed out of the way.
Opened open(const DataConstraint& phi, const DataAssignment& sigma) {
  Opened o{phi.kernel(), phi.quantified()};
  VariableSet avoid = phi.variables();
  for (const auto& b : sigma) avoid.insert(b.first);
  for (auto& q : o.quantified) {
    if (!sigma.contains(q)) continue;
    DataVariable renamed = fresh_variable(q, avoid);
    avoid.insert(renamed);
    for (auto& l : o.kernel) l = l.substitute(q, DataTerm::var(renamed));
    q = renamed;
  }
  return o;
}

}  // namespace

void search_solutions(std::span<const DataLiteral> literals, DataAssignment& sigma,
                      const std::vector<DataVariable>& unknowns, FiniteDomain dom,
                      const ExtralogicalRegistry& reg,
                      const std::function<bool(const DataAssignment&)>& visit) {
  Search(literals, sigma, unknowns, dom, reg, visit).run();
}

bool entails(const DataAssignment& sigma, const DataConstraint& phi, FiniteDomain dom,
             const ExtralogicalRegistry& reg) {
  if (phi.quantified().empty()) {
    return std::all_of(phi.kernel().begin(), phi.kernel().end(),
                       [&](const DataLiteral& l) { return entails(sigma, l, reg); });
  }
  Opened o = open(phi, sigma);
  DataAssignment work = sigma;
  bool found = false;
  search_solutions(o.kernel, work, o.quantified, dom, reg, [&](const DataAssignment&) {
    found = true;
    return false;
  });
  return found;
}

std::optional<DataAssignment> solve_bruteforce(const DataConstraint& phi,
                                               const DataAssignment& sigma_init,
                                               FiniteDomain dom,
                                               const ExtralogicalRegistry& reg) {
  Opened o = open(phi, sigma_init);
  std::vector<DataVariable> unknowns;
  for (const auto& v : phi.free_variables())
    if (!sigma_init.contains(v)) unknowns.push_back(v);
  std::vector<DataVariable> free_unknowns = unknowns;
  unknowns.insert(unknowns.end(), o.quantified.begin(), o.quantified.end());

  DataAssignment work = sigma_init;
  std::optional<DataAssignment> result;
  search_solutions(o.kernel, work, unknowns, dom, reg, [&](const DataAssignment& s) {
    DataAssignment r = sigma_init;
    for (const auto& v : free_unknowns) r.set(v, *s.get(v));
    result = std::move(r);
    return false;
  });
  return result;
}

std::vector<DataAssignment> all_solutions(const DataConstraint& phi,
                                          const DataAssignment& sigma_init, FiniteDomain dom,
                                          const ExtralogicalRegistry& reg) {
  Opened o = open(phi, sigma_init);
  std::vector<DataVariable> unknowns;
  for (const auto& v : phi.free_variables())
    if (!sigma_init.contains(v)) unknowns.push_back(v);
  std::vector<DataVariable> free_unknowns = unknowns;
  unknowns.insert(unknowns.end(), o.quantified.begin(), o.quantified.end());

  DataAssignment work = sigma_init;
  std::set<DataAssignment> seen;
  std::vector<DataAssignment> out;
  search_solutions(o.kernel, work, unknowns, dom, reg, [&](const DataAssignment& s) {
    DataAssignment r = sigma_init;
    for (const auto& v : free_unknowns) r.set(v, *s.get(v));
    if (seen.insert(r).second) out.push_back(std::move(r));
    return true;
  });
  return out;
}

bool for_each_assignment(const std::vector<DataVariable>& vars, FiniteDomain dom,
                         bool with_undefined,
                         const std::function<bool(const DataAssignment&)>& visit) {
  const Datum low = with_undefined ? -1 : 0;
  std::vector<Datum> values(vars.size(), low);
  for (;;) {
    DataAssignment sigma;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (values[i] >= 0) sigma.set(vars[i], values[i]);
    if (!visit(sigma)) return false;
    std::size_t i = 0;
    for (; i < vars.size(); ++i) {
      if (++values[i] < dom.size()) break;
      values[i] = low;
    }
    if (i == vars.size()) return true;
  }
}

bool equivalent_on_domain(const DataConstraint& phi1, const DataConstraint& phi2,
                          FiniteDomain dom, const ExtralogicalRegistry& reg) {
  VariableSet all = phi1.free_variables();
  auto f2 = phi2.free_variables();
  all.insert(f2.begin(), f2.end());
  std::vector<DataVariable> vars(all.begin(), all.end());
  return for_each_assignment(vars, dom, true, [&](const DataAssignment& sigma) {
    return entails(sigma, phi1, dom, reg) == entails(sigma, phi2, dom, reg);
  });
}

}  // namespace caf
