#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ultraforce/forcing.hpp"
#include "ultraforce/generators.hpp"

using namespace uf;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(UF_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in, "missing golden file ", name);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

FormulaPtr P(const char* s) { return parse_formula(s); }

}  // namespace

TEST_CASE("golden expansions") {
  CHECK(print(translate(P("(uf X)"), "U")) == golden("forces_uf.txt"));
  CHECK(print(expand_ult("V")) == golden("ult.txt"));
  CHECK(print(expand_preceq("V", "U")) == golden("preceq.txt"));
}

TEST_CASE("atoms and commuting clauses") {
  CHECK(print(translate(P("(= x y)"), "U")) == "(= x y)");
  CHECK(print(translate(P("(forall x (= x x))"), "U")) == "(forall x (= x x))");
  FormulaPtr a = P("(uf X)"), b = P("(uf Y)");
  FormulaPtr conj = translate(fm::land(a, b), "U");
  REQUIRE(conj->kind == Formula::Kind::And);
  // names are drawn from one counter, so compare up to renaming
  CHECK(alpha_equal(*conj->lhs, *translate(a, "U")));
  CHECK(alpha_equal(*conj->rhs, *translate(b, "U")));
  FormulaPtr all = translate(P("(forallset Z (uf Z))"), "U");
  CHECK(all->kind == Formula::Kind::ForallSet);
  CHECK(alpha_equal(*all->lhs, *translate(P("(uf Z)"), "U")));
}

TEST_CASE("clause shapes") {
  FormulaPtr neg = translate(P("(not (uf X))"), "U");
  REQUIRE(neg->kind == Formula::Kind::ForallSet);
  REQUIRE(neg->lhs->kind == Formula::Kind::Implies);
  CHECK(match_preceq_guard(*neg->lhs->lhs, neg->var) == std::optional<std::string>("U"));
  CHECK(neg->lhs->rhs->kind == Formula::Kind::Not);

  FormulaPtr disj = translate(P("(or (uf X) (uf Y))"), "U");
  REQUIRE(disj->kind == Formula::Kind::ForallSet);
  const FormulaPtr inner = disj->lhs->rhs;
  REQUIRE(inner->kind == Formula::Kind::ExistsSet);
  CHECK(match_preceq_guard(*inner->lhs->lhs, inner->var) == std::optional<std::string>(disj->var));
  CHECK(inner->lhs->rhs->kind == Formula::Kind::Or);

  CHECK_FALSE(match_preceq_guard(*P("(and (= 0 0) (uf X))"), "V"));
}

TEST_CASE("condition variable handling") {
  CHECK_THROWS_AS(translate(P("(uf U)"), "U"), std::invalid_argument);
  CHECK_THROWS_AS(translate(P("(= 0 0)"), "u"), std::invalid_argument);
  // a bound U is renamed away
  FormulaPtr t = translate(P("(forallset U (uf U))"), "U");
  CHECK(free_vars(*t).sets == std::set<std::string>{"U"});
  CHECK(t->var != "U");
}

TEST_CASE("translation is uf-free and tracks free variables") {
  Rng rng(33);
  GenOptions o;
  o.num_vars = {"p"};
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, o);
    FormulaPtr t = translate(f, "U");
    REQUIRE_MESSAGE(is_uf_free(*t), print(f));
    FreeVars want = free_vars(*f), got = free_vars(*t);
    // U only shows up once some clause mentions the condition
    if (!got.sets.count("U")) REQUIRE(is_uf_free(*f));
    got.sets.erase("U");
    REQUIRE(got.nums == want.nums);
    REQUIRE(got.sets == want.sets);
    // deterministic
    REQUIRE(equal(t, translate(f, "U")));
  }
}
