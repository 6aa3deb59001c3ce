#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "caf/command.hpp"
#include "caf/constraint.hpp"
#include "caf/semantics.hpp"

namespace caf::testing {

struct GenOptions {
  int max_vars = 4;
  int max_literals = 4;
  bool quantify = false;
  bool relations = true;
};

/// Random terms, literals and constraints over a small variable pool.
class ConstraintGenerator {
 public:
  ConstraintGenerator(std::mt19937_64& rng, GenOptions opts) : rng_(rng), opts_(opts) {
    const DataVariable all[] = {DataVariable::port("A"), DataVariable::port("B"),
                                DataVariable::pre("m"),  DataVariable::port("C"),
                                DataVariable::post("m"), DataVariable::port("D"),
                                DataVariable::port("E"), DataVariable::pre("n")};
    for (int i = 0; i < opts_.max_vars && i < 8; ++i) pool_.push_back(all[i]);
  }

  const std::vector<DataVariable>& variable_pool() const { return pool_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  DataVariable variable() { return pool_[uniform(0, static_cast<int>(pool_.size()) - 1)]; }

  DataTerm term(int depth) {
    int r = uniform(0, 99);
    if (depth <= 0 || r < 60) return DataTerm::var(variable());
    if (r < 72) return DataTerm::constant(uniform(0, 4));
    switch (uniform(0, 2)) {
      case 0:
        return DataTerm::app("add", {term(depth - 1), term(depth - 1)});
      case 1:
        return DataTerm::app("inc", {term(depth - 1)});
      default:
        return DataTerm::app("mult", {term(depth - 1), term(depth - 1)});
    }
  }

  DataLiteral atom() {
    int r = uniform(0, 99);
    if (r < 3) return DataLiteral::top();
    if (r < 5) return DataLiteral::bottom();
    if (!opts_.relations || r < 75) return DataLiteral::eq(term(2), term(2));
    switch (uniform(0, 2)) {
      case 0:
        return DataLiteral::rel("Odd", {term(1)});
      case 1:
        return DataLiteral::rel("SmallerThan", {term(1), term(1)});
      default:
        return DataLiteral::rel("divByThree", {term(1)});
    }
  }

  DataLiteral literal() {
    DataLiteral a = atom();
    if (chance(0.15)) return DataLiteral::negation(a);
    return a;
  }

  DataConstraint constraint() {
    std::vector<DataLiteral> kernel;
    int k = uniform(1, opts_.max_literals);
    for (int i = 0; i < k; ++i) kernel.push_back(literal());
    DataConstraint body(kernel);
    if (!opts_.quantify || !chance(0.5)) return body;
    auto free = body.free_variables();
    std::vector<DataVariable> candidates(free.begin(), free.end());
    std::shuffle(candidates.begin(), candidates.end(), rng_);
    std::vector<DataVariable> quantified;
    int n = std::min<int>(uniform(1, 2), static_cast<int>(candidates.size()));
    quantified.assign(candidates.begin(), candidates.begin() + n);
    return DataConstraint(quantified, kernel);
  }

  /// Term over `known` variables and small constants.
  DataTerm term_over(const std::vector<DataVariable>& known, int depth) {
    int r = uniform(0, 99);
    if (depth <= 0 || r < 55) {
      if (known.empty() || r < 10) return DataTerm::constant(uniform(0, 4));
      return DataTerm::var(known[uniform(0, static_cast<int>(known.size()) - 1)]);
    }
    if (uniform(0, 2) == 0) return DataTerm::app("inc", {term_over(known, depth - 1)});
    return DataTerm::app(chance(0.5) ? "add" : "mult",
                         {term_over(known, depth - 1), term_over(known, depth - 1)});
  }

  /// A constraint built so that it usually has an arborescence for the
  /// returned uncontrolled set: each other variable is defined by an
  /// equality over earlier ones, then arbitrary literals over all of them
  /// are added, and sometimes a defined variable is quantified.
  std::pair<DataConstraint, VariableSet> layered(int max_literals) {
    std::vector<DataVariable> order = pool_;
    std::shuffle(order.begin(), order.end(), rng_);
    int nx = uniform(0, std::min<int>(2, static_cast<int>(order.size())));
    std::vector<DataVariable> known(order.begin(), order.begin() + nx);
    VariableSet uncontrolled(known.begin(), known.end());
    std::vector<DataLiteral> kernel;
    for (std::size_t i = nx; i < order.size() && static_cast<int>(kernel.size()) < max_literals; ++i) {
      DataTerm x = DataTerm::var(order[i]);
      DataTerm t = term_over(known, 2);
      kernel.push_back(chance(0.5) ? DataLiteral::eq(x, t) : DataLiteral::eq(t, x));
      known.push_back(order[i]);
    }
    int extra = uniform(0, std::max(0, max_literals - static_cast<int>(kernel.size())));
    for (int i = 0; i < extra; ++i) {
      DataLiteral l = DataLiteral::top();
      switch (uniform(0, 3)) {
        case 0:
          l = DataLiteral::eq(term_over(known, 1), term_over(known, 1));
          break;
        case 1:
          l = DataLiteral::rel("Odd", {term_over(known, 1)});
          break;
        case 2:
          l = DataLiteral::rel("SmallerThan", {term_over(known, 1), term_over(known, 1)});
          break;
        default:
          l = DataLiteral::rel("divByThree", {term_over(known, 1)});
      }
      kernel.push_back(chance(0.25) ? DataLiteral::negation(l) : l);
    }
    if (kernel.empty()) kernel.push_back(DataLiteral::top());
    DataConstraint body(kernel);
    std::vector<DataVariable> candidates;
    for (const auto& v : body.free_variables())
      if (!uncontrolled.count(v)) candidates.push_back(v);
    VariableSet x;
    for (const auto& v : body.free_variables())
      if (uncontrolled.count(v)) x.insert(v);
    if (candidates.empty() || !chance(0.3)) return {body, x};
    return {DataConstraint({candidates[uniform(0, static_cast<int>(candidates.size()) - 1)]}, kernel),
            x};
  }

  /// Random command over the variable pool.
  DataCommand command(int size) {
    if (size <= 1) {
      switch (uniform(0, 5)) {
        case 0:
          return DataCommand::skip();
        case 1:
        case 2:
          return DataCommand::assign(variable(), term(2));
        default:
          return DataCommand::fail_unless(DataConstraint(literal()));
      }
    }
    if (chance(0.15))
      return DataCommand::fail_unless(DataConstraint(literal()), command(size - 1));
    int left = uniform(1, size - 1);
    return DataCommand::seq(command(left), command(size - left));
  }

  /// Each variable of `vars` is bound with probability `p_bound`.
  DataAssignment assignment(const VariableSet& vars, FiniteDomain dom, double p_bound) {
    DataAssignment s;
    for (const auto& v : vars)
      if (chance(p_bound)) s.set(v, uniform(0, dom.size() - 1));
    return s;
  }

 private:
  std::mt19937_64& rng_;
  GenOptions opts_;
  std::vector<DataVariable> pool_;
};

}  // namespace caf::testing
