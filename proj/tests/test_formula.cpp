#include <doctest.h>

#include "ultraforce/epset.hpp"
#include "ultraforce/formula.hpp"
#include "ultraforce/generators.hpp"

using namespace uf;

namespace {
FormulaPtr P(const char* s) { return parse_formula(s); }

bool has_kind(const Formula& f, Formula::Kind k) {
  if (f.kind == k) return true;
  return (f.lhs && has_kind(*f.lhs, k)) || (f.rhs && has_kind(*f.rhs, k));
}
}  // namespace

TEST_CASE("parse basic shapes") {
  FormulaPtr a = P("(in x X)");
  CHECK(a->kind == Formula::Kind::In);
  CHECK(a->t1->name == "x");
  CHECK(a->set->name == "X");

  FormulaPtr b = P("(uf (sub X n))");
  REQUIRE(b->kind == Formula::Kind::Uf);
  CHECK(b->set->kind == SetTerm::Kind::Sub);
  CHECK(b->set->index->name == "n");

  FormulaPtr c = P("  (forallb x (succ 3)\n (implies (in x Ev) (< x (+ 1 (* 2 (pair x 0))))))");
  CHECK(c->kind == Formula::Kind::ForallB);
  CHECK(print(c) == "(forallb x (succ 3) (implies (in x Ev) (< x (+ 1 (* 2 (pair x 0))))))");
}

TEST_CASE("parse errors carry a position") {
  for (const char* bad : {"(in x)", "(foo x X)", "(forall X (= x x))", "(in x y)", "(= x x", "(= x x) x",
                          "(uf x)", "(forallset x (= x x))"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_formula(bad), SyntaxError);
  }
  try {
    parse_formula("(and (= x x) (bogus))");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.position == 14);
  }
}

TEST_CASE("formula files") {
  auto fs = parse_formula_file("# header\n(= x x)\n\n  (uf X)  # trailing\n");
  REQUIRE(fs.size() == 2);
  CHECK(print(fs[1]) == "(uf X)");
}

TEST_CASE("print and parse round-trip on generated formulas") {
  Rng rng(21);
  GenOptions o;
  o.full_terms = true;
  o.max_depth = 5;
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = random_formula(rng, o);
    const std::string text = print(f);
    FormulaPtr g = parse_formula(text);
    REQUIRE_MESSAGE(equal(f, g), text);
    REQUIRE(print(g) == text);
  }
}

TEST_CASE("free variables") {
  FreeVars fv = free_vars(*P("(forall x (and (in x (sub X y)) (existsset Y (uf (sub Y z)))))"));
  CHECK(fv.nums == std::set<std::string>{"y", "z"});
  CHECK(fv.sets == std::set<std::string>{"X"});
  // the bound term of a bounded quantifier is outside its scope
  CHECK(free_vars(*P("(forallb x x (= x x))")).nums == std::set<std::string>{"x"});
}

TEST_CASE("substitution") {
  CHECK(print(substitute_num(P("(in x X)"), "x", fm::lit(3))) == "(in 3 X)");
  CHECK(print(substitute_num(P("(forall x (in x X))"), "x", fm::lit(3))) == "(forall x (in x X))");
  CHECK(print(substitute_num(P("(forallb x x (in x X))"), "x", fm::lit(3))) == "(forallb x 3 (in x X))");

  // y would be captured: the binder is renamed
  FormulaPtr f = P("(exists y (< x y))");
  FormulaPtr g = substitute_num(f, "x", fm::var("y"));
  CHECK(free_vars(*g).nums == std::set<std::string>{"y"});
  CHECK(g->var != "y");

  FormulaPtr h = substitute_set(P("(forallset Y (uf (sub X 0)))"), "X", fm::svar("Y"));
  CHECK(free_vars(*h).sets == std::set<std::string>{"Y"});
  CHECK(alpha_equal(*h, *P("(forallset Z (uf (sub Y 0)))")));

  Rng rng(5);
  GenOptions o;
  o.num_vars = {"p", "q"};
  for (int i = 0; i < 300; ++i) {
    FormulaPtr phi = random_formula(rng, o);
    TermPtr t = random_term(rng, {"a", "q"}, o);
    FreeVars before = free_vars(*phi);
    if (!before.nums.count("p")) continue;
    FreeVars after = free_vars(*substitute_num(phi, "p", t));
    std::set<std::string> expect = before.nums;
    expect.erase("p");
    for (const auto& v : free_vars(*t)) expect.insert(v);
    REQUIRE_MESSAGE(after.nums == expect, print(phi), " with ", print(*t));
    REQUIRE(after.sets == before.sets);
  }
}

TEST_CASE("alpha equality") {
  CHECK(alpha_equal(*P("(forall x (< x y))"), *P("(forall z (< z y))")));
  CHECK_FALSE(alpha_equal(*P("(forall x (< x y))"), *P("(forall y (< y y))")));
  CHECK_FALSE(alpha_equal(*P("(forall x (< x y))"), *P("(forall x (< x z))")));
}

TEST_CASE("normalize abbreviations") {
  CHECK(print(normalize_abbreviations(P("(not (= x y))"))) == "(implies (= x y) (= (succ 0) 0))");
  FormulaPtr e = normalize_abbreviations(P("(exists x (= x 0))"));
  CHECK(print(e) == "(implies (forall x (implies (= x 0) (= (succ 0) 0))) (= (succ 0) 0))");

  Rng rng(8);
  GenOptions o;
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = random_formula(rng, o);
    FormulaPtr n = normalize_abbreviations(f);
    REQUIRE(is_normalized(*n));
    for (auto k : {Formula::Kind::Or, Formula::Kind::Not, Formula::Kind::Exists, Formula::Kind::ExistsB,
                   Formula::Kind::ExistsSet})
      REQUIRE_FALSE(has_kind(*n, k));
    REQUIRE(equal(normalize_abbreviations(n), n));
  }
}

TEST_CASE("fragment predicates") {
  CHECK(is_uf_free(*P("(forall x (in x X))")));
  CHECK_FALSE(is_uf_free(*P("(and (= 0 0) (uf X))")));
  CHECK(is_arithmetic(*P("(forall x (uf (sub X x)))")));
  CHECK_FALSE(is_arithmetic(*P("(forallset Y (uf Y))")));
  CHECK(depth(*P("(and (= 0 0) (not (= 0 0)))")) == 2);
  CHECK(fresh_name("U", {"U", "U_1"}) == "U_2");
}
