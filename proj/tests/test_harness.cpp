#include <doctest.h>

#include "ultraforce/harness.hpp"

using namespace uf;

TEST_CASE("lemma suite on the default universe, small run") {
  HarnessOptions o;
  o.samples = 40;
  o.seed = 11;
  for (const auto& r : check_all(o, Universe::default_universe())) {
    CAPTURE(r.lemma);
    CHECK(r.tried == 40);
    for (const auto& c : r.failures) MESSAGE(c.formula, " @ ", c.condition, " ", c.detail);
    CHECK(r.pass());
  }
}

TEST_CASE("reports are deterministic in the seed") {
  HarnessOptions o;
  o.samples = 15;
  o.seed = 3;
  const Universe u = Universe::default_universe();
  const LemmaReport a = check_double_negation(o, u);
  const LemmaReport b = check_double_negation(o, u);
  CHECK(a.tried == b.tried);
  CHECK(a.failures.size() == b.failures.size());
  CHECK_THROWS_AS(run_lemma("excluded-middle", o, u), std::invalid_argument);
}

TEST_CASE("a space that stops at depth 2 breaks axiom 4 and double negation") {
  // cond[¬mult3, ¬mult4] is a leaf of the depth-2 space and decides neither
  // parity, so nothing below it forces evens or odds
  Universe u = Universe::default_universe();
  u.extension_depth = 2;
  Env env;
  env.bind_set("X", EPSet::odds()).bind_set("C", EPSet::evens());
  CHECK_FALSE(eval_forcing(parse_formula("(or (uf X) (uf C))"), env, Condition(), u).value);
  CHECK(eval_forcing(parse_formula("(or (uf X) (uf C))"), env, Condition(), Universe::default_universe()).value);

  HarnessOptions o;
  o.samples = 200;
  o.max_failures = 1;
  const LemmaReport r = check_uf_axioms(o, u);
  REQUIRE_FALSE(r.pass());
  CHECK(r.failures[0].formula == "(or (uf X) (uf C))");
  CHECK_FALSE(check_double_negation(o, u).pass());
}

TEST_CASE("shrinking") {
  const FormulaPtr f = parse_formula("(and (implies (= 1 1) (uf X)) (forall x (= x x)))");
  Universe u = Universe::default_universe();
  // fails whenever a uf atom survives and the depth is at least 2
  const auto fails = [](const FormulaPtr& g, const Universe& v) {
    return print(g).find("uf") != std::string::npos && v.extension_depth >= 2;
  };
  auto [g, v] = shrink(f, u, fails);
  CHECK(print(g) == "(uf X)");
  CHECK(v.extension_depth == 2);
  CHECK(v.extension_pool.empty() == false);
  CHECK(v.extension_pool.size() == 2);
}
