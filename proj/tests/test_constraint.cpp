#include <random>

#include "caf/constraint.hpp"
#include "caf/error.hpp"
#include "caf/semantics.hpp"
#include "caf/syntax.hpp"
#include "doctest.h"
#include "random_constraints.hpp"

using namespace caf;

namespace {

DataVariable P(const char* n) { return DataVariable::port(n); }
DataConstraint C(const char* s) { return parse_constraint(s); }

const char* kPhiEg = "'x == B & C == D & add(B, D) == E & E == F & E == G & !Odd(G)";

}  // namespace

TEST_CASE("evaluate follows the three equations") {
  DataAssignment s{{P("A"), 1}};
  CHECK(evaluate(s, parse_term("A")) == 1);
  CHECK_FALSE(evaluate({}, parse_term("A")).has_value());
  DataAssignment bd{{P("B"), 3}, {P("D"), 5}};
  CHECK(evaluate(bd, parse_term("add(B, D)")) == 8);
  CHECK_FALSE(evaluate(bd, parse_term("add(B, Z)")).has_value());
  CHECK(evaluate({}, parse_term("7")) == 7);
  CHECK_THROWS_AS(evaluate(bd, parse_term("nosuch(B)")), ConfigError);
}

TEST_CASE("entailment of literals and constraints") {
  FiniteDomain dom(5);
  auto xpost = DataVariable::post("x");
  CHECK(entails(DataAssignment{{P("A"), 1}, {xpost, 1}}, C("A == x'"), dom));
  CHECK_FALSE(entails(DataAssignment{{P("A"), 1}}, C("A == x'"), dom));
  CHECK(entails(DataAssignment{{P("G"), 2}}, C("!Odd(G)"), dom));
  CHECK_FALSE(entails({}, C("!Odd(G)"), dom));
  CHECK(entails({}, C("true"), dom));
  CHECK_FALSE(entails({}, C("false"), dom));
  CHECK(entails(DataAssignment{{P("a"), 1}, {P("c"), 1}}, C("E b . (a == b & b == c)"), dom));
  CHECK_FALSE(entails(DataAssignment{{P("a"), 1}, {P("c"), 2}}, C("E b . (a == b & b == c)"), dom));
  // the witness may lie outside the enumerated domain when an equality forces it
  CHECK(entails(DataAssignment{{P("a"), 4}, {P("c"), 8}}, C("E b . (b == add(a, a) & b == c)"), dom));
  // a quantified variable shadows an assigned one
  CHECK(entails(DataAssignment{{P("b"), 9}, {P("a"), 1}}, C("E b . (b == a)"), dom));
}

TEST_CASE("substitute is capture-free") {
  auto xpre = DataVariable::pre("x");
  CHECK(substitute(C("A == B"), DataTerm::var(xpre), P("A")) == C("'x == B"));
  CHECK(substitute(C("E A . (A == B)"), DataTerm::var(xpre), P("A")) == C("E A . (A == B)"));
  CHECK(substitute(C("p1 == p2 & p2 == p3"), DataTerm::var(P("p1")), P("p2")) ==
        C("p1 == p1 & p1 == p3"));
  auto captured = substitute(C("E y . (x == y)"), DataTerm::var(P("y")), P("x"));
  CHECK(captured.str() == "E _y1 . (y == _y1)");
  CHECK(equivalent_on_domain(captured, C("y == y"), FiniteDomain(3)));
}

TEST_CASE("symmetric closure") {
  CHECK(symmetric_closure(C("A == B")).size() == 2);
  CHECK(symmetric_closure(C("!Odd(G)")).size() == 1);
  CHECK(symmetric_closure(C(kPhiEg)).size() == 11);
}

TEST_CASE("simplify_trivial") {
  CHECK(simplify_trivial(C("'x == 'x & C == C & add('x, C) == F & F == F & F == F & !Odd(F)")) ==
        C("add('x, C) == F & !Odd(F)"));
  CHECK(simplify_trivial(C("true")) == C("true"));
  CHECK(simplify_trivial(C("A == A")) == C("true"));
  CHECK(simplify_trivial(C("E b . (b == b & a == 1)")) == C("a == 1"));
}

TEST_CASE("solve_bruteforce") {
  auto xpost = DataVariable::post("x");
  auto r = solve_bruteforce(C("A == x'"), DataAssignment{{P("A"), 1}}, FiniteDomain(3));
  REQUIRE(r);
  CHECK(*r == DataAssignment{{P("A"), 1}, {xpost, 1}});
  CHECK_FALSE(solve_bruteforce(C("false"), DataAssignment{{P("A"), 1}}, FiniteDomain(3)));

  auto xpre = DataVariable::pre("x");
  auto eg = solve_bruteforce(C(kPhiEg), DataAssignment{{xpre, 2}, {P("C"), 4}}, FiniteDomain(10));
  REQUIRE(eg);
  CHECK(eg->get(P("B")) == 2);
  CHECK(eg->get(P("D")) == 4);
  CHECK(eg->get(P("E")) == 6);
  CHECK(eg->get(P("F")) == 6);
  CHECK(eg->get(P("G")) == 6);
  CHECK_FALSE(solve_bruteforce(C(kPhiEg), DataAssignment{{xpre, 2}, {P("C"), 3}}, FiniteDomain(10)));

  auto put = solve_bruteforce(C("A == x'"), DataAssignment{{P("A"), 7}}, FiniteDomain(5));
  REQUIRE(put);
  CHECK(put->get(xpost) == 7);

  auto q = solve_bruteforce(C("E b . (a == b & b == c)"), DataAssignment{{P("a"), 2}}, FiniteDomain(3));
  REQUIRE(q);
  CHECK(*q == DataAssignment{{P("a"), 2}, {P("c"), 2}});
}

TEST_CASE("equivalent_on_domain") {
  FiniteDomain dom(4);
  CHECK(equivalent_on_domain(C("A == B"), C("B == A"), dom));
  CHECK_FALSE(equivalent_on_domain(C("true"), C("false"), dom));
  CHECK(equivalent_on_domain(C("E p2 . (p1 == p2 & p2 == p3)"), C("p1 == p3"), dom));
  CHECK_FALSE(equivalent_on_domain(C("Odd(a)"), C("!Odd(a)"), dom));
}

TEST_CASE("constraint text round-trips") {
  for (const char* s : {kPhiEg, "E p . E q . (p == q & q == r)", "true", "false",
                        "!(a == b) & SmallerThan(a, -3)", "x' == inc('x)", "E == F"}) {
    auto c = C(s);
    CHECK(C(c.str().c_str()) == c);
  }
  CHECK(C("!(a == b)").kernel()[0].str() == "!(a == b)");
  CHECK_THROWS_AS(C("a =="), ParseError);
  CHECK_THROWS_AS(C("a & b"), ParseError);
  CHECK_THROWS_AS(C("E x . E x . x == 1"), ParseError);
  try {
    C("a == b $");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 8);
  }
}

TEST_CASE("entailment is monotone") {
  std::mt19937_64 rng(11);
  testing::ConstraintGenerator gen(rng, {.max_vars = 4, .max_literals = 4, .quantify = true});
  FiniteDomain dom(4);
  for (int i = 0; i < 300; ++i) {
    auto phi = gen.constraint();
    auto vars = phi.free_variables();
    DataAssignment sigma = gen.assignment(vars, dom, 0.8);
    if (!entails(sigma, phi, dom)) continue;
    DataAssignment bigger = sigma;
    for (const auto& v : gen.variable_pool())
      if (!bigger.contains(v)) bigger.set(v, static_cast<Datum>(rng() % dom.size()));
    CHECK_MESSAGE(entails(bigger, phi, dom), phi.str() << " under " << bigger.str());
  }
}

TEST_CASE("evaluation is strict") {
  std::mt19937_64 rng(12);
  testing::ConstraintGenerator gen(rng, {.max_vars = 4, .max_literals = 1});
  FiniteDomain dom(5);
  for (int i = 0; i < 500; ++i) {
    auto t = gen.term(3);
    auto vars = t.variables();
    auto sigma = gen.assignment(vars, dom, 0.7);
    bool all = std::all_of(vars.begin(), vars.end(),
                           [&](const DataVariable& v) { return sigma.contains(v); });
    CHECK(evaluate(sigma, t).has_value() == all);
  }
}

TEST_CASE("closure and simplification preserve meaning") {
  std::mt19937_64 rng(13);
  testing::ConstraintGenerator gen(rng, {.max_vars = 3, .max_literals = 4});
  FiniteDomain dom(3);
  for (int i = 0; i < 150; ++i) {
    auto phi = gen.constraint();
    auto closure = symmetric_closure(phi);
    DataConstraint closed(std::vector<DataLiteral>(closure.begin(), closure.end()));
    CHECK(symmetric_closure(closed) == closure);
    CHECK(equivalent_on_domain(phi, closed, dom));
    // t == t fails when t is undefined, so dropping it is exact only on
    // assignments that define every free variable
    auto simple = simplify_trivial(phi);
    auto free = phi.free_variables();
    for_each_assignment({free.begin(), free.end()}, dom, false, [&](const DataAssignment& s) {
      CHECK(entails(s, phi, dom) == entails(s, simple, dom));
      return true;
    });
  }
}

TEST_CASE("solver results are sound and NoSolution is exhaustive") {
  std::mt19937_64 rng(14);
  testing::ConstraintGenerator gen(rng, {.max_vars = 4, .max_literals = 4});
  FiniteDomain dom(4);
  for (int i = 0; i < 300; ++i) {
    auto phi = gen.constraint();
    auto free = phi.free_variables();
    auto init = gen.assignment(free, dom, 0.4);
    auto r = solve_bruteforce(phi, init, dom);
    if (r) {
      CHECK(entails(*r, phi, dom));
      CHECK(init.subset_of(*r));
      continue;
    }
    std::vector<DataVariable> rest;
    for (const auto& v : free)
      if (!init.contains(v)) rest.push_back(v);
    bool none = for_each_assignment(rest, dom, false, [&](const DataAssignment& ext) {
      DataAssignment full = init;
      for (const auto& [v, d] : ext) full.set(v, d);
      return !entails(full, phi, dom);
    });
    CHECK_MESSAGE(none, phi.str() << " from " << init.str());
  }
}
