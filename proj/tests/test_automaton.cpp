#include <algorithm>

#include "caf/automaton.hpp"
#include "caf/automaton_text.hpp"
#include "caf/composition.hpp"
#include "caf/error.hpp"
#include "caf/families.hpp"
#include "caf/primitives.hpp"
#include "caf/syntax.hpp"
#include "doctest.h"

using namespace caf;

namespace {

ConstraintAutomaton prim(std::string kind, std::vector<std::string> in, std::vector<std::string> out,
                         std::vector<std::string> mem = {}, std::string ext = {}) {
  return make_primitive(PrimitiveSpec{std::move(kind), std::move(ext), std::move(mem), {},
                                      std::move(in), std::move(out)});
}

ConstraintAutomaton compose(const char* text) {
  return eval_composition(parse_composition(text));
}

const Transition* find(const ConstraintAutomaton& a, const PortSet& sync) {
  for (const auto& t : a.transitions)
    if (t.sync == sync) return &t;
  return nullptr;
}

const char* kLateAsyncMerg2 = R"(
automaton LateAsyncMerg2 {
  ports { in A; in B; out C; }
  memory { x; }
  states { q1 init; q2; }
  trans q1 -> q2 on {A} where A == x' ;
  trans q1 -> q2 on {B} where B == x' ;
  trans q2 -> q1 on {C} where 'x == C ;
}
)";

}  // namespace

TEST_CASE("primitives match their definitions") {
  auto sync = prim("sync", {"a"}, {"b"});
  CHECK(sync.states.size() == 1);
  REQUIRE(sync.transitions.size() == 1);
  CHECK(sync.transitions[0].sync == PortSet{"a", "b"});
  CHECK(sync.transitions[0].guard.str() == "a == b");

  auto drain = prim("syncdrain", {"a", "b"}, {});
  REQUIRE(drain.transitions.size() == 1);
  CHECK(drain.transitions[0].guard.str() == "true");
  CHECK(drain.ports.inputs == PortSet{"a", "b"});

  auto fifo = prim("fifo", {"a"}, {"b"}, {"x"});
  CHECK(fifo.states.size() == 2);
  REQUIRE(fifo.transitions.size() == 2);
  CHECK(fifo.transitions[0].sync == PortSet{"a"});
  CHECK(fifo.transitions[0].guard.str() == "x' == a");
  CHECK(fifo.transitions[1].sync == PortSet{"b"});
  CHECK(fifo.transitions[1].guard.str() == "b == 'x");

  auto lossy = prim("lossysync", {"a"}, {"b"});
  CHECK(find(lossy, {"a"})->guard.str() == "true");
  CHECK(find(lossy, {"a", "b"})->guard.str() == "a == b");

  auto filter = prim("filter", {"a"}, {"b"}, {}, "Odd");
  CHECK(find(filter, {"a"})->guard.str() == "!Odd(a)");
  CHECK(find(filter, {"a", "b"})->guard.str() == "Odd(a) & a == b");

  auto merg = prim("merg2", {"a", "b"}, {"c"});
  CHECK(find(merg, {"a", "c"})->guard.str() == "a == c");
  CHECK(find(merg, {"b", "c"})->guard.str() == "b == c");

  auto repl = prim("repl2", {"a"}, {"b", "c"});
  CHECK(repl.transitions[0].guard.str() == "a == b & a == c");

  auto binop = prim("binop", {"a", "b"}, {"c"}, {}, "add");
  CHECK(binop.transitions[0].guard.str() == "add(a, b) == c");

  auto full = make_primitive(PrimitiveSpec{"fifo", "", {"x"}, {{"x", 1}}, {"a"}, {"b"}});
  CHECK(full.initial == "q1");
  CHECK(full.initial_memory.at("x") == 1);
}

TEST_CASE("primitive errors") {
  CHECK_THROWS_AS(prim("sync", {"a", "b"}, {"c"}), ConfigError);
  CHECK_THROWS_AS(prim("fifo", {"a"}, {"b"}), ConfigError);
  CHECK_THROWS_AS(prim("filter", {"a"}, {"b"}, {}, "Nope"), ConfigError);
  CHECK_THROWS_AS(prim("binop", {"a", "b"}, {"c"}, {}, "Odd"), ConfigError);
  CHECK_THROWS_AS(prim("sync", {"a"}, {"a"}), ConfigError);
  CHECK_THROWS_AS(prim("teleport", {"a"}, {"b"}), ConfigError);
}

TEST_CASE("every primitive validates") {
  for (const auto& a : {prim("sync", {"a"}, {"b"}), prim("syncdrain", {"a", "b"}, {}),
                        prim("lossysync", {"a"}, {"b"}), prim("filter", {"a"}, {"b"}, {}, "Odd"),
                        prim("fifo", {"a"}, {"b"}, {"m"}), prim("merg2", {"a", "b"}, {"c"}),
                        prim("repl2", {"a"}, {"b", "c"}), prim("binop", {"a", "b"}, {"c"}, {}, "add")})
    CHECK(validate(a).empty());
}

TEST_CASE("validate reports violations") {
  auto a = parse_automaton(kLateAsyncMerg2);
  CHECK(validate(a).empty());
  auto bad = a;
  bad.transitions[0].guard = parse_constraint("A == B");
  CHECK(validate(bad).size() == 1);
  bad = a;
  bad.initial = "nowhere";
  CHECK(validate(bad).size() == 1);
  bad = a;
  bad.transitions[0].guard = parse_constraint("A == y'");
  CHECK(validate(bad).size() == 1);
}

TEST_CASE("join of two syncs") {
  auto j = join(prim("sync", {"a"}, {"b"}), prim("sync", {"b"}, {"c"}));
  CHECK(j.states.size() == 1);
  REQUIRE(j.transitions.size() == 1);
  CHECK(j.transitions[0].sync == PortSet{"a", "b", "c"});
  CHECK(j.transitions[0].guard.str() == "a == b & b == c");
  CHECK(j.ports.is_internal("b"));
  CHECK(j.ports.inputs == PortSet{"a"});
  CHECK(j.ports.outputs == PortSet{"c"});
  CHECK(validate(j).empty());
}

TEST_CASE("join of disjoint automata interleaves and synchronizes") {
  auto j = join(prim("sync", {"a"}, {"b"}), prim("fifo", {"c"}, {"d"}, {"x"}));
  CHECK(j.states.size() == 2);
  CHECK(j.transitions.size() == 6);
  auto from0 = std::count_if(j.transitions.begin(), j.transitions.end(),
                             [&](const Transition& t) { return t.source == j.initial; });
  CHECK(from0 == 3);
  bool pair = std::any_of(j.transitions.begin(), j.transitions.end(), [](const Transition& t) {
    return t.sync == PortSet{"a", "b", "c"};
  });
  CHECK(pair);
}

TEST_CASE("merger into a fifo gives the producers/consumer automaton") {
  auto a = hide(join(prim("merg2", {"A", "B"}, {"p"}), prim("fifo", {"p"}, {"C"}, {"x"})), "p");
  CHECK(a.states.size() == 2);
  REQUIRE(a.transitions.size() == 3);
  CHECK(a.ports.inputs == PortSet{"A", "B"});
  CHECK(a.ports.outputs == PortSet{"C"});
  CHECK(find(a, {"A"})->guard.str() == "E p . (A == p & x' == p)");
  CHECK(find(a, {"C"})->guard.str() == "C == 'x");
}

TEST_CASE("join errors") {
  CHECK_THROWS_AS(join(prim("fifo", {"a"}, {"b"}, {"x"}), prim("fifo", {"c"}, {"d"}, {"x"})),
                  AutomatonError);
  auto ab = join(prim("sync", {"a"}, {"b"}), prim("sync", {"b"}, {"c"}));
  CHECK_THROWS_AS(join(ab, prim("sync", {"b"}, {"d"})), AutomatonError);
  CHECK_THROWS_AS(join(prim("fifo", {"a"}, {"b"}, {"x"}), prim("fifo", {"c"}, {"d"}, {"y"}),
                       JoinLimits{.max_states = 3}),
                  AutomatonError);
}

TEST_CASE("hide") {
  auto chain = join(prim("sync", {"a"}, {"b"}), prim("sync", {"b"}, {"c"}));
  auto h = hide(chain, "b");
  CHECK(h.transitions[0].sync == PortSet{"a", "c"});
  CHECK(h.transitions[0].guard.str() == "E b . (a == b & b == c)");
  CHECK(!h.ports.all.count("b"));

  auto lossy = hide(prim("lossysync", {"a"}, {"b"}), "b");
  CHECK(find(lossy, {"a"}) != nullptr);
  CHECK(lossy.transitions[0].guard.str() == "true");

  auto three = compose("compose S = hide(join(sync(p1;p2), sync(p2;p3), sync(p3;p4)), p2, p3)");
  CHECK(three.transitions[0].guard.str() == "E p3 . E p2 . (p1 == p2 & p2 == p3 & p3 == p4)");
  CHECK_THROWS_AS(hide(chain, "zz"), AutomatonError);
}

TEST_CASE("hide order only permutes the quantifier prefix") {
  auto chain = compose("compose S = join(sync(p1;p2), sync(p2;p3), sync(p3;p4))");
  auto x = hide(hide(chain, "p2"), "p3");
  auto y = hide(hide(chain, "p3"), "p2");
  REQUIRE(x.transitions.size() == y.transitions.size());
  auto qx = x.transitions[0].guard.quantified();
  auto qy = y.transitions[0].guard.quantified();
  std::sort(qx.begin(), qx.end());
  std::sort(qy.begin(), qy.end());
  CHECK(qx == qy);
  CHECK(x.transitions[0].guard.kernel() == y.transitions[0].guard.kernel());
}

TEST_CASE("automaton text") {
  auto a = parse_automaton(kLateAsyncMerg2);
  CHECK(a.states == std::set<std::string>{"q1", "q2"});
  CHECK(a.initial == "q1");
  CHECK(a.transitions.size() == 3);
  CHECK(a.memory == std::set<std::string>{"x"});
  auto once = serialize_automaton(a);
  CHECK(serialize_automaton(parse_automaton(once)) == once);
  CHECK(parse_automaton(once) == canonicalize(a));

  auto joined = join(prim("sync", {"a"}, {"b"}), prim("fifo", {"c"}, {"d"}, {"x"}));
  auto text = serialize_automaton(joined);
  CHECK(parse_automaton(text) == canonicalize(joined));

  auto full = parse_automaton(
      "automaton F { ports { in a; out b; } memory { m = 4; } states { e; f init; }"
      " trans e -> f on {a} where m' == a ; trans f -> e on {b} where b == 'm ; }");
  CHECK(full.initial_memory.at("m") == 4);

  try {
    parse_automaton("automaton X { states { q1 init; } trans q1 ->");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 44);
  }
  CHECK_THROWS_AS(parse_automaton("automaton X { ports { in a; } states { q init; } "
                                  "trans q -> q on {a} where a == b ; }"),
                  AutomatonError);
}

TEST_CASE("composition expressions") {
  auto sync2 = compose("compose Sync2 = hide(join(sync(a;p), sync(p;b)), p)");
  CHECK(sync2.name == "Sync2");
  REQUIRE(sync2.transitions.size() == 1);
  CHECK(sync2.transitions[0].sync == PortSet{"a", "b"});

  auto fifo2 = compose("compose Fifo2 = hide(join(fifo{x}(a;p), fifo{y}(p;b)), p)");
  CHECK(fifo2.states.size() == 4);
  CHECK(fifo2.memory == std::set<std::string>{"x", "y"});
  CHECK(find(fifo2, {}) != nullptr);

  auto elim = compose("compose E = elim(join(sync(a;p), sync(p;b)), p)");
  REQUIRE(elim.transitions.size() == 1);
  CHECK(elim.transitions[0].guard.str() == "a == b");

  auto c = parse_composition("compose X = hide(join(filter[Odd](a;p), fifo{m=1}(p;b)), p)");
  CHECK(parse_composition(serialize_composition(c)).expr.str() == c.expr.str());
  CHECK(c.expr.str() == "hide(join(filter[Odd](a;p), fifo{m=1}(p;b)), p)");
  CHECK_THROWS_AS(parse_composition("compose X = warp(a;b)"), ParseError);
  CHECK_THROWS_AS(parse_composition("compose X = sync(a;b"), ParseError);
}

TEST_CASE("chain law") {
  for (int k = 2; k <= 8; ++k) {
    auto a = eval_composition(family("sync", k));
    REQUIRE(a.transitions.size() == 1);
    CHECK(a.transitions[0].sync == PortSet{"p1", "p" + std::to_string(k + 1)});
    CHECK(a.transitions[0].guard.quantified().size() == static_cast<std::size_t>(k - 1));
  }
}

TEST_CASE("families build") {
  for (const auto& f : family_names()) {
    for (int k : {1, 2, 3}) {
      auto a = eval_composition(family(f, k));
      CHECK_MESSAGE(validate(a).empty(), f << k);
      for (const auto& p : a.ports.all) CHECK_FALSE(a.ports.is_internal(p));
    }
  }
  auto rout = eval_composition(family("rout", 2));
  CHECK(rout.transitions.size() == 2);
  CHECK(find(rout, {"In", "Out1"}) != nullptr);
  CHECK(find(rout, {"In", "Out2"}) != nullptr);
  auto rout8 = eval_composition(family("rout", 8));
  CHECK(rout8.transitions.size() == 8);
  auto merg = eval_composition(family("merg", 4));
  CHECK(merg.transitions.size() == 4);
  auto late = eval_composition(family("lateasyncmerg", 2));
  CHECK(late.states.size() == 2);
  CHECK(late.transitions.size() == 3);
  CHECK_THROWS_AS(family("nope", 2), ConfigError);
  CHECK_THROWS_AS(eval_composition(family("fifo", 64)), AutomatonError);
}
