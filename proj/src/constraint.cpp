#include "caf/constraint.hpp"

#include <algorithm>
#include <stdexcept>

namespace caf {

struct DataLiteral::Rep {
  Shape shape;
  bool negated;
  std::vector<DataTerm> terms;
  std::string relation;
  std::string text;
};

namespace {

std::string atom_text(DataLiteral::Shape shape, std::span<const DataTerm> terms,
                      const std::string& relation) {
  switch (shape) {
    case DataLiteral::Shape::Bot:
      return "false";
    case DataLiteral::Shape::Top:
      return "true";
    case DataLiteral::Shape::Eq:
      return terms[0].str() + " == " + terms[1].str();
    case DataLiteral::Shape::Rel: {
      std::string s = relation + "(";
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) s += ", ";
        s += terms[i].str();
      }
      return s + ")";
    }
  }
  return {};
}

}  // namespace

DataLiteral DataLiteral::bottom() {
  return DataLiteral(std::make_shared<const Rep>(Rep{Shape::Bot, false, {}, {}, "false"}));
}

DataLiteral DataLiteral::top() {
  return DataLiteral(std::make_shared<const Rep>(Rep{Shape::Top, false, {}, {}, "true"}));
}

DataLiteral DataLiteral::eq(DataTerm lhs, DataTerm rhs) {
  std::vector<DataTerm> ts{std::move(lhs), std::move(rhs)};
  auto text = atom_text(Shape::Eq, ts, {});
  return DataLiteral(std::make_shared<const Rep>(
      Rep{Shape::Eq, false, std::move(ts), {}, std::move(text)}));
}

DataLiteral DataLiteral::rel(std::string relation, std::vector<DataTerm> args) {
  if (args.empty())
    throw std::invalid_argument("relation '" + relation +
                                "' needs at least one argument");
  auto text = atom_text(Shape::Rel, args, relation);
  return DataLiteral(std::make_shared<const Rep>(
      Rep{Shape::Rel, false, std::move(args), std::move(relation), std::move(text)}));
}

DataLiteral DataLiteral::negation(const DataLiteral& atom) {
  if (atom.negated()) throw std::invalid_argument("negations do not nest");
  const Rep& a = *atom.rep_;
  std::string text = a.shape == Shape::Eq ? "!(" + a.text + ")" : "!" + a.text;
  return DataLiteral(std::make_shared<const Rep>(
      Rep{a.shape, true, a.terms, a.relation, std::move(text)}));
}

DataLiteral::Shape DataLiteral::shape() const { return rep_->shape; }
bool DataLiteral::negated() const { return rep_->negated; }
const DataTerm& DataLiteral::lhs() const { return rep_->terms.at(0); }
const DataTerm& DataLiteral::rhs() const { return rep_->terms.at(1); }
const std::string& DataLiteral::relation() const { return rep_->relation; }
std::span<const DataTerm> DataLiteral::terms() const { return rep_->terms; }
const std::string& DataLiteral::str() const { return rep_->text; }

DataLiteral DataLiteral::atom() const {
  if (!negated()) return *this;
  switch (shape()) {
    case Shape::Bot:
      return bottom();
    case Shape::Top:
      return top();
    case Shape::Eq:
      return eq(lhs(), rhs());
    case Shape::Rel:
      return rel(relation(), rep_->terms);
  }
  return *this;
}

DataLiteral DataLiteral::flipped() const {
  if (!is_equality()) throw std::invalid_argument("only equalities flip: " + str());
  return eq(rhs(), lhs());
}

void DataLiteral::collect_variables(VariableSet& out) const {
  for (const auto& t : rep_->terms) t.collect_variables(out);
}

VariableSet DataLiteral::variables() const {
  VariableSet out;
  collect_variables(out);
  return out;
}

bool DataLiteral::mentions(const DataVariable& v) const {
  return std::any_of(rep_->terms.begin(), rep_->terms.end(),
                     [&](const DataTerm& t) { return t.mentions(v); });
}

DataLiteral DataLiteral::substitute(const DataVariable& x, const DataTerm& t) const {
  if (!mentions(x)) return *this;
  std::vector<DataTerm> ts;
  ts.reserve(rep_->terms.size());
  for (const auto& u : rep_->terms) ts.push_back(u.substitute(x, t));
  DataLiteral a = shape() == Shape::Eq ? eq(ts[0], ts[1]) : rel(relation(), std::move(ts));
  return negated() ? negation(a) : a;
}

// ---------------------------------------------------------------------------

DataConstraint::DataConstraint(std::vector<DataVariable> quantified,
                               std::vector<DataLiteral> kernel)
    : quantified_(std::move(quantified)), kernel_(std::move(kernel)) {
  if (kernel_.empty()) throw std::invalid_argument("constraint kernel is empty");
  VariableSet seen;
  for (const auto& q : quantified_)
    if (!seen.insert(q).second)
      throw std::invalid_argument("variable " + q.str() + " quantified twice");
  std::sort(kernel_.begin(), kernel_.end());
}

bool DataConstraint::is_quantified(const DataVariable& v) const {
  return std::find(quantified_.begin(), quantified_.end(), v) != quantified_.end();
}

VariableSet DataConstraint::free_variables() const {
  VariableSet out;
  for (const auto& l : kernel_) l.collect_variables(out);
  for (const auto& q : quantified_) out.erase(q);
  return out;
}

VariableSet DataConstraint::variables() const {
  VariableSet out;
  for (const auto& l : kernel_) l.collect_variables(out);
  out.insert(quantified_.begin(), quantified_.end());
  return out;
}

std::string DataConstraint::str() const {
  std::string s;
  for (const auto& q : quantified_) s += "E " + q.str() + " . ";
  if (!quantified_.empty()) s += "(";
  for (std::size_t i = 0; i < kernel_.size(); ++i) {
    if (i) s += " & ";
    s += kernel_[i].str();
  }
  if (!quantified_.empty()) s += ")";
  return s;
}

// ---------------------------------------------------------------------------

DataVariable fresh_variable(const DataVariable& like, const VariableSet& avoid) {
  for (std::size_t i = 1;; ++i) {
    DataVariable v{like.kind, "_" + like.name + std::to_string(i)};
    if (!avoid.count(v)) return v;
  }
}

namespace {

std::vector<DataLiteral> substitute_kernel(const std::vector<DataLiteral>& kernel,
                                           const DataVariable& x, const DataTerm& t) {
  std::vector<DataLiteral> out;
  out.reserve(kernel.size());
  for (const auto& l : kernel) out.push_back(l.substitute(x, t));
  return out;
}

// Renames every quantified variable of `phi` that occurs in `clash` to a fresh
// one, avoiding `clash` and everything in `phi`.
DataConstraint rename_apart(const DataConstraint& phi, const VariableSet& clash) {
  bool needed = std::any_of(phi.quantified().begin(), phi.quantified().end(),
                            [&](const DataVariable& q) { return clash.count(q) != 0; });
  if (!needed) return phi;
  VariableSet avoid = clash;
  auto vars = phi.variables();
  avoid.insert(vars.begin(), vars.end());
  std::vector<DataVariable> quantified = phi.quantified();
  std::vector<DataLiteral> kernel = phi.kernel();
  for (auto& q : quantified) {
    if (!clash.count(q)) continue;
    DataVariable renamed = fresh_variable(q, avoid);
    avoid.insert(renamed);
    kernel = substitute_kernel(kernel, q, DataTerm::var(renamed));
    q = renamed;
  }
  return DataConstraint(std::move(quantified), std::move(kernel));
}

}  // namespace

DataConstraint substitute(const DataConstraint& phi, const DataTerm& t,
                          const DataVariable& x) {
  if (phi.is_quantified(x)) return phi;
  DataConstraint apart = rename_apart(phi, t.variables());
  return DataConstraint(apart.quantified(), substitute_kernel(apart.kernel(), x, t));
}

DataConstraint exists(const DataVariable& x, const DataConstraint& phi) {
  if (!phi.free_variables().count(x)) return phi;
  std::vector<DataVariable> quantified{x};
  quantified.insert(quantified.end(), phi.quantified().begin(), phi.quantified().end());
  return DataConstraint(std::move(quantified), phi.kernel());
}

DataConstraint conjoin(const DataConstraint& a, const DataConstraint& b) {
  DataConstraint a2 = rename_apart(a, b.variables());
  DataConstraint b2 = rename_apart(b, a2.variables());
  std::vector<DataVariable> quantified = a2.quantified();
  quantified.insert(quantified.end(), b2.quantified().begin(), b2.quantified().end());
  std::vector<DataLiteral> kernel = a2.kernel();
  kernel.insert(kernel.end(), b2.kernel().begin(), b2.kernel().end());
  return DataConstraint(std::move(quantified), std::move(kernel));
}

std::set<DataLiteral> symmetric_closure(const DataConstraint& phi) {
  std::set<DataLiteral> out(phi.kernel().begin(), phi.kernel().end());
  for (const auto& l : phi.kernel())
    if (l.is_equality()) out.insert(l.flipped());
  return out;
}

DataConstraint simplify_trivial(const DataConstraint& phi) {
  std::vector<DataLiteral> kernel;
  for (const auto& l : phi.kernel())
    if (!l.is_trivial()) kernel.push_back(l);
  if (kernel.empty()) kernel.push_back(DataLiteral::top());
  VariableSet used;
  for (const auto& l : kernel) l.collect_variables(used);
  std::vector<DataVariable> quantified;
  for (const auto& q : phi.quantified())
    if (used.count(q)) quantified.push_back(q);
  return DataConstraint(std::move(quantified), std::move(kernel));
}

}  // namespace caf
