#include <doctest.h>

#include "ultraforce/deciders.hpp"
#include "ultraforce/generators.hpp"

using namespace uf;

namespace {

FormulaPtr P(const char* s) { return parse_formula(s); }

// v decides X when it forces X ∈ 𝔘 or forces its negation, exactly.
bool decides(const Condition& v, const EPSet& x) {
  Env env;
  env.bind_set("X", x);
  const Universe u;
  const TruthValue in = eval_forcing(P("(uf X)"), env, v, u);
  const TruthValue out = eval_forcing(P("(not (uf X))"), env, v, u);
  return in.exact() && out.exact() && in.value != out.value;
}

}  // namespace

TEST_CASE("settle_term examples") {
  Settlement a = settle_term(Condition(), {EPSet::evens(), EPSet::multiples(3)});
  CHECK(a.trace.sigma == std::vector<bool>{true, true});
  CHECK(equivalent(a.v, Condition({EPSet::evens(), EPSet::multiples(3)})));

  Settlement b = settle_term(Condition({EPSet::evens()}), {EPSet::odds()});
  CHECK(b.trace.sigma == std::vector<bool>{false});
  CHECK(std::count(b.v.members().begin(), b.v.members().end(), EPSet::evens()) == 2);

  const Condition u({EPSet::multiples(4)});
  Settlement c = settle_term(u, {});
  CHECK(c.v == u);
  CHECK(c.trace.sigma.empty());
}

TEST_CASE("settle_term contract on random inputs") {
  Rng rng(3);
  const Universe du = Universe::default_universe();
  for (int i = 0; i < 200; ++i) {
    const Condition u = random_condition(rng, du.extension_pool, 3);
    std::vector<EPSet> xs;
    for (std::size_t k = pick(rng, 7); k > 0; --k) xs.push_back(random_epset(rng));
    Settlement s = settle_term(u, xs);
    REQUIRE(extends(s.v, u));
    REQUIRE(check_ult(s.v.members()));
    EPSet running = u.intersection();
    for (std::size_t k = 0; k < xs.size(); ++k) {
      running = intersect(running, s.trace.sigma[k] ? xs[k] : complement(xs[k]));
      REQUIRE(running.is_infinite());
      REQUIRE(decides(s.v, xs[k]));
      Env env;
      env.bind_set("X", xs[k]);
      REQUIRE(eval_forcing(P("(uf X)"), env, s.v, Universe{}).value == s.trace.sigma[k]);
    }
  }
}

TEST_CASE("recursively_decides") {
  const Condition u;
  CHECK(recursively_decides(u, P("(forall x (< x (succ x)))"), Env{}, 5).v == u);

  // column n of X is mult(n+2)
  std::vector<EPSet> cols{EPSet::multiples(2), EPSet::multiples(3), EPSet::multiples(4)};
  Env env;
  env.bind_set("X", SetValue::family(cols));
  Settlement s = recursively_decides(u, P("(uf (sub X n))"), env, 3);
  for (const auto& c : cols) CHECK(decides(s.v, c));

  for (Nat n = 0; n < 3; ++n) {
    Env e = env;
    e.bind_num("n", n);
    const TruthValue yes = eval_forcing(P("(uf (sub X n))"), e, s.v, Universe{});
    const TruthValue no = eval_forcing(P("(not (uf (sub X n)))"), e, s.v, Universe{});
    CHECK(yes.exact());
    CHECK(no.exact());
    CHECK(yes.value != no.value);
    CHECK(yes.value == s.trace.sigma[n]);
  }
  CHECK_THROWS_AS(recursively_decides(u, P("(forallset Y (uf Y))"), env, 3), std::invalid_argument);
}

TEST_CASE("comprehension_witness") {
  Env env;
  env.bind_set("X", EPSet::evens());
  Comprehension a = comprehension_witness(Condition(), P("(in n X)"), "n", env, 10);
  CHECK(a.table == std::vector<Nat>{0, 2, 4, 6, 8});

  Env fam;
  fam.bind_set("X", SetValue::family({EPSet::multiples(2), EPSet::odds(), EPSet::multiples(3)}));
  Comprehension b = comprehension_witness(Condition({EPSet::evens()}), P("(uf (sub X n))"), "n", fam, 3);
  std::vector<Nat> want;
  for (Nat n = 0; n < 3; ++n)
    if (b.trace.sigma[n]) want.push_back(n);
  CHECK(b.table == want);
  CHECK(b.table.size() >= 1);  // column 0 is evens, already forced

  Comprehension c = comprehension_witness(Condition(), fm::absurdity(), "n", env, 10);
  CHECK(c.table.empty());
  CHECK(c.y.is_empty());
}

TEST_CASE("partition_select") {
  const std::vector<EPSet> mod3 = {EPSet::make(0, 3, {1}, {}), EPSet::make(0, 3, {2}, {}), EPSet::multiples(3)};
  CHECK(partition_select(mod3) == 2);
  CHECK(partition_select_direct(mod3) == 2);
  CHECK(partition_select({EPSet::finite({1, 2}), EPSet::cofinite({1, 2})}) == 1);
  CHECK_THROWS_AS(partition_select({EPSet::evens(), EPSet::evens()}), std::invalid_argument);
  CHECK_THROWS_AS(partition_select({EPSet::evens()}), std::invalid_argument);

  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    // color each n below a threshold and each residue class independently
    const std::size_t k = pick(rng, 8) + 1;
    const Nat thr = pick(rng, 6), per = pick(rng, 6) + 1;
    std::vector<std::vector<bool>> pre(k, std::vector<bool>(thr)), res(k, std::vector<bool>(per));
    for (Nat n = 0; n < thr; ++n) pre[pick(rng, k)][n] = true;
    for (Nat r = 0; r < per; ++r) res[pick(rng, k)][r] = true;
    std::vector<EPSet> parts;
    for (std::size_t j = 0; j < k; ++j) parts.push_back(EPSet::from_bits(pre[j], res[j]));
    REQUIRE(is_partition(parts));
    REQUIRE(partition_select(parts) == partition_select_direct(parts));
  }
}

TEST_CASE("transfinite_force") {
  Env env;
  env.bind_set("X", EPSet::evens());
  TransfiniteResult none = transfinite_force(Condition(), {}, P("(in n X)"), "n", "H", env, 8);
  CHECK(none.v == Condition());
  CHECK(none.stages.empty());

  TransfiniteResult one = transfinite_force(Condition(), {"a"}, P("(in n X)"), "n", "H", env, 8);
  REQUIRE(one.stages.size() == 1);
  CHECK(one.stages[0].table == comprehension_witness(Condition(), P("(in n X)"), "n", env, 8).table);

  // stage b copies stage a's table shifted by one and asks 𝔘 about column n
  Env fam;
  fam.bind_set("X", SetValue::family({EPSet::multiples(2), EPSet::odds(), EPSet::multiples(3), EPSet::from(2)}));
  FormulaPtr theta = P("(or (uf (sub X n)) (existsb m n (in (pair 0 m) H)))");
  TransfiniteResult two = transfinite_force(Condition(), {"a", "b"}, theta, "n", "H", fam, 4);
  REQUIRE(two.stages.size() == 2);
  CHECK(extends(two.v, Condition()));
  for (const auto& st : two.stages) {
    Env e = fam;
    e.bind_set("H", st.history).bind_set("Y", EPSet::finite(st.table));
    for (Nat n = 0; n < 4; ++n) {
      e.bind_num("n", n);
      const TruthValue r = eval_forcing(comprehension_equivalence(theta, "n", "Y"), e, two.v, Universe{});
      CHECK(r.value);
      CHECK(r.exact());
      e.pop_num();
    }
  }
}
