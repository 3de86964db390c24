#include <doctest.h>

#include "ultraforce/forcing.hpp"
#include "ultraforce/generators.hpp"
#include "ultraforce/semantics.hpp"

using namespace uf;

namespace {

FormulaPtr P(const char* s) { return parse_formula(s); }

Universe small_universe() {
  Universe u;
  u.numeric_bound = 32;
  u.extension_depth = 1;
  u.set_pool = {EPSet::evens(), EPSet::odds(), EPSet::naturals(), EPSet::empty()};
  u.extension_pool = {EPSet::evens(), EPSet::odds(), EPSet::multiples(3), complement(EPSet::multiples(3))};
  return u;
}

// Brute-force truth of a uf-free formula without any periodicity argument:
// unbounded quantifiers scan [0, cap).
bool brute(const Formula& f, Env& env, Nat cap) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::In: return eval_set_term(*f.set, env).member(eval_term(*f.t1, env));
    case K::Eq: return eval_term(*f.t1, env) == eval_term(*f.t2, env);
    case K::Lt: return eval_term(*f.t1, env) < eval_term(*f.t2, env);
    case K::And: return brute(*f.lhs, env, cap) && brute(*f.rhs, env, cap);
    case K::Or: return brute(*f.lhs, env, cap) || brute(*f.rhs, env, cap);
    case K::Implies: return !brute(*f.lhs, env, cap) || brute(*f.rhs, env, cap);
    case K::Not: return !brute(*f.lhs, env, cap);
    default: {
      const bool all = f.kind == K::Forall || f.kind == K::ForallB;
      const bool bounded = f.kind == K::ForallB || f.kind == K::ExistsB;
      const Nat n_max = bounded ? eval_term(*f.t1, env) : cap;
      for (Nat n = 0; n < n_max; ++n) {
        env.bind_num(f.var, n);
        const bool r = brute(*f.lhs, env, cap);
        env.pop_num();
        if (r != all) return !all;
      }
      return all;
    }
  }
}

}  // namespace

TEST_CASE("set values") {
  const SetValue fam = SetValue::of(Condition({EPSet::evens(), EPSet::multiples(3)}));
  CHECK(fam.member(cantor_pair(0, 4)));
  CHECK_FALSE(fam.member(cantor_pair(0, 3)));
  CHECK(fam.member(cantor_pair(1, 9)));
  CHECK(fam.member(cantor_pair(5, 7)));  // past the end reads as the naturals
  CHECK(fam.column(1).epset() == EPSet::multiples(3));
  CHECK(fam == SetValue::of(Condition({EPSet::evens(), EPSet::multiples(3)})));
  CHECK_FALSE(fam == SetValue(EPSet::evens()));
  CHECK_THROWS_AS(fam.epset(), EvalError);
}

TEST_CASE("direct evaluation examples") {
  Universe u;
  u.set_pool = {EPSet::naturals()};
  Env env;
  env.bind_set("Ev", EPSet::evens());
  TruthValue a = eval_direct(P("(forallb x 10 (implies (in x Ev) (in x Ev)))"), env, u);
  CHECK(a.value);
  CHECK(a.exact());

  TruthValue b = eval_direct(P("(forall x (exists y (and (< x y) (in y Ev))))"), env, u);
  CHECK(b.value);
  CHECK_FALSE(b.exact());  // the outer body has an unbounded quantifier
  TruthValue c = eval_direct(P("(exists y (and (< 9999 y) (in y Ev)))"), env, u);
  CHECK(c.value);
  CHECK(c.exact());

  TruthValue d = eval_direct(P("(existsset X (forallb x 4 (in x X)))"), env, u);
  CHECK(d.value);
  CHECK_FALSE(d.exact());
  CHECK(d.reasons.count("set quantifier restricted to set_pool"));

  CHECK_THROWS_AS(eval_direct(P("(in x X)"), env, u), EvalError);
  CHECK_THROWS_AS(eval_direct(P("(uf Ev)"), env, u), EvalError);
}

TEST_CASE("exact scans agree with brute force far past the bound") {
  Rng rng(41);
  GenOptions o;
  o.uf_atoms = false;
  o.set_quantifiers = false;
  o.max_depth = 2;
  o.num_vars = {"p"};
  Universe u;
  u.numeric_bound = 8;  // small on purpose: approximate results must show it
  int exact_seen = 0;
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = random_formula(rng, o);
    Env env;
    env.bind_num("p", pick(rng, 6));
    env.bind_set("X", random_epset(rng));
    env.bind_set("Y", random_epset(rng));
    const TruthValue r = eval_direct(f, env, u);
    if (!r.exact()) continue;
    ++exact_seen;
    REQUIRE_MESSAGE(r.value == brute(*f, env, 400), print(f));
  }
  CHECK(exact_seen > 150);
}

TEST_CASE("forcing examples") {
  const Universe u = small_universe();
  Env env;
  env.bind_set("X", EPSet::evens());
  TruthValue a = eval_forcing(P("(uf X)"), env, Condition({EPSet::evens()}), u);
  CHECK(a.value);
  CHECK(a.exact());

  Env env4;
  env4.bind_set("X", EPSet::multiples(4));
  TruthValue b = eval_forcing(P("(uf X)"), env4, Condition({EPSet::evens()}), u);
  CHECK_FALSE(b.value);
  CHECK(b.exact());

  env.bind_set("C", EPSet::odds());
  Universe two = u;
  two.extension_pool = {EPSet::evens(), EPSet::odds()};
  TruthValue c = eval_forcing(P("(or (uf X) (uf C))"), env, Condition(), two);
  CHECK(c.value);
  CHECK(c.exact());  // the two cells evens and odds are both realised
  // cond[mult(3)] has no extension deciding evens in a depth-1 space
  TruthValue c1 = eval_forcing(P("(or (uf X) (uf C))"), env, Condition(), u);
  CHECK_FALSE(c1.value);
  CHECK_FALSE(c1.exact());
  TruthValue d = eval_forcing(P("(uf X)"), env, Condition(), u);
  CHECK_FALSE(d.value);
  TruthValue e = eval_forcing(P("(not (uf X))"), env, Condition(), u);
  CHECK_FALSE(e.value);  // cond[evens] forces uf X
}

TEST_CASE("ult and preceq expansions evaluate as their definitions") {
  const Universe u = small_universe();
  const std::vector<Condition> conds = {Condition(), Condition({EPSet::evens()}),
                                        Condition({EPSet::evens(), EPSet::multiples(3)}),
                                        Condition({EPSet::multiples(6)}), Condition({EPSet::multiples(4)})};
  for (const auto& c : conds) {
    Env env;
    env.bind_set("V", SetValue::of(c));
    CHECK(eval_direct(expand_ult("V"), env, u).value);
  }
  {
    Env env;
    env.bind_set("V", SetValue::family({EPSet::evens(), EPSet::odds()}));
    CHECK_FALSE(eval_direct(expand_ult("V"), env, u).value);
  }
  for (const auto& v : conds)
    for (const auto& w : conds) {
      Env env;
      env.bind_set("V", SetValue::of(v)).bind_set("U", SetValue::of(w));
      CAPTURE(v.to_string());
      CAPTURE(w.to_string());
      CHECK(eval_direct(expand_preceq("V", "U"), env, u).value == extends(v, w));
    }
}

TEST_CASE("condition space") {
  const Universe u = small_universe();
  const ConditionSpace s(Condition({EPSet::evens()}), u);
  // evens+odds fails Ult
  CHECK(s.size() == 4);
  CHECK(s.at(0) == Condition({EPSet::evens()}));
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::count(s.below(i).begin(), s.below(i).end(), i) == 1);
    for (std::size_t j : s.below(i)) CHECK(extends(s.at(j), s.at(i)));
  }
  CHECK(s.find(Condition({EPSet::evens(), EPSet::multiples(3)})).has_value());
  CHECK(Universe::default_universe().extension_pool_complement_closed());
  CHECK(Universe::default_universe().set_pool.size() == 12);
}

TEST_CASE("universe files") {
  Universe u = parse_universe("# demo\nnumeric_bound 20\nextension_depth 1\nset evens\next mult(3)\npool odds\n");
  CHECK(u.numeric_bound == 20);
  CHECK(u.extension_depth == 1);
  CHECK(u.set_pool == std::vector<EPSet>{EPSet::evens(), EPSet::odds()});
  CHECK(u.extension_pool == std::vector<EPSet>{EPSet::multiples(3), EPSet::odds()});
  CHECK(parse_universe(to_string(u)).set_pool == u.set_pool);
  CHECK_THROWS_AS(parse_universe("colour 3\n"), SyntaxError);
}

TEST_CASE("the two forcing evaluators agree") {
  const Universe u = small_universe();
  Rng rng(77);
  GenOptions o;
  o.max_depth = 2;
  o.num_vars = {"p"};
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = random_formula(rng, o);
    Env env;
    env.bind_num("p", pick(rng, 4));
    env.bind_set("X", u.extension_pool[pick(rng, 4)]);
    env.bind_set("Y", u.extension_pool[pick(rng, 4)]);
    const Condition c = random_condition(rng, u.extension_pool, 1);
    const TruthValue a = eval_forcing(f, env, c, u);
    const TruthValue b = eval_translated(f, env, c, u);
    REQUIRE_MESSAGE(a.value == b.value, print(f), " at ", c.to_string());
  }
}

TEST_CASE("node budget") {
  Universe u = small_universe();
  u.node_budget = 100;
  Env env;
  CHECK_THROWS_AS(eval_direct(P("(forallb x 50 (forallb y 50 (= x x)))"), env, u), ResourceError);
}
