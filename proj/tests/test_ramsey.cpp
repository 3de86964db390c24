#include <doctest.h>

#include "ultraforce/ramsey.hpp"
#include "ultraforce/semantics.hpp"

using namespace uf;

namespace {

ColoringRule y_mod_2() {
  // c_0(x, y) = y mod 2, every other n colors 0
  return ColoringRule::build(1, 1, 1, 2, 0, 0,
                             [](Nat m, Nat, bool, Nat yr, bool) { return m == 0 ? static_cast<int>(yr) : 0; });
}

ColoringRule n_mod_2() {
  return ColoringRule::build(0, 2, 1, 1, 0, 0, [](Nat m, Nat, bool, Nat, bool) { return static_cast<int>(m); });
}

// T_n straight from the definition by looking at many y.
bool brute_in_s(const ColoringRule& c, Nat n, Nat x) {
  if (n > x) return false;
  // the 𝔘₀ class holds every large multiple of y_period
  const Nat q = c.y_period;
  const Nat y = (std::max<Nat>(x + 1, c.y_threshold) + q - 1) / q * q;
  return c.color(n, x, y) == 0;
}

}  // namespace

TEST_CASE("rule class") {
  const ColoringRule r = y_mod_2();
  CHECK(r.color(0, 3, 5) == 1);
  CHECK(r.color(0, 3, 6) == 0);
  CHECK(r.color(7, 3, 5) == 0);
  CHECK(r.slice(0, 3, 1) == EPSet::odds());
  CHECK_FALSE(r.is_constant());
  CHECK(ColoringRule::constant(1).is_constant());
  CHECK(n_mod_2().color(5, 6, 7) == 1);
  CHECK(n_mod_2().n_class(4) == 0);

  const ColoringRule back = parse_rule(to_string(r));
  CHECK(back.table == r.table);
  CHECK(back.y_period == 2);
  CHECK_THROWS_AS(parse_rule("x_period 2\ntable 0101\n"), RuleError);
  CHECK_THROWS_AS(parse_rule("x_period 0\ntable 0\n"), RuleError);
  CHECK_THROWS_AS(parse_rule("colour 2\ntable 0\n"), RuleError);
  CHECK_THROWS_AS(parse_rule("table 0102\n"), RuleError);
  CHECK_THROWS_AS(parse_rule("n_cap 2\n"), RuleError);
  CHECK(parse_rule("# constant\ntable 00\n     00\n").is_constant());
}

TEST_CASE("slices are the sets they describe") {
  Rng rng(5);
  for (int i = 0; i < 40; ++i) {
    const ColoringRule c = random_rule(rng);
    for (Nat n = 0; n < 6; ++n)
      for (Nat x = 0; x < 8; ++x) {
        const EPSet s = c.slice(n, x, 1);
        for (Nat y = 0; y < 40; ++y) REQUIRE(s.member(y) == (c.color(n, x, y) == 1));
      }
  }
}

TEST_CASE("S_x and T_n") {
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    const ColoringRule c = random_rule(rng);
    StrongPairs sp(c);
    for (Nat x = 0; x < 14; ++x) {
      const EPSet& cls = sp.selected_class(x);
      REQUIRE(cls.in_canonical_ultrafilter());
      for (Nat n = 0; n <= x + 1; ++n) REQUIRE(sp.in_s(n, x) == brute_in_s(c, n, x));
      // every y in the class has c^x(y) = S_x
      for (Nat y = x + 1; y < x + 30; ++y)
        if (cls.member(y))
          for (Nat n = 0; n <= x; ++n) REQUIRE((c.color(n, x, y) == 0) == sp.in_s(n, x));
    }
    for (Nat n = 0; n < 10; ++n) {
      const EPSet t = sp.t_set(n);
      for (Nat x = 0; x < 40; ++x) REQUIRE(t.member(x) == sp.in_s(n, x));
      REQUIRE(t.in_canonical_ultrafilter() == sp.verdict(n));
    }
  }
}

TEST_CASE("strong_pairs examples") {
  const RamseyWitness a = strong_pairs(ColoringRule::constant(0), 6);
  CHECK(a.h == std::vector<Nat>{0, 1, 2, 3, 4, 5});
  CHECK(verify_witness(ColoringRule::constant(0), a));

  const ColoringRule c = y_mod_2();
  const RamseyWitness b = strong_pairs(c, 8);
  CHECK(b.verdicts[0]);
  for (std::size_t i = 0; i < b.h.size(); ++i)
    for (std::size_t j = i + 1; j < b.h.size(); ++j) CHECK(c.color(0, b.h[i], b.h[j]) == 0);
  CHECK(verify_witness(c, b));

  CHECK(verify_witness(c, RamseyWitness{}));
  CHECK(strong_pairs(c, 0).h.empty());
}

TEST_CASE("strong_pairs on random rules") {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    const ColoringRule c = random_rule(rng);
    const std::size_t count = pick(rng, 11);
    const RamseyWitness w = strong_pairs(c, count);
    REQUIRE(w.h.size() == count);
    REQUIRE_MESSAGE(verify_witness(c, w), to_string(c));
    if (count >= 2 && !c.is_constant()) {
      RamseyWitness m = w;
      std::swap(m.h[0], m.h[1]);
      CHECK_FALSE(verify_witness(c, m));
    }
    for (std::size_t n = 0; n + 1 < count; ++n) {
      RamseyWitness m = w;
      m.verdicts[n] = !m.verdicts[n];
      CHECK_FALSE(verify_witness(c, m));
    }
  }
}

TEST_CASE("triples examples") {
  const RamseyWitness a = triples(ColoringRule::constant(1), 5);
  CHECK(a.color == 1);
  CHECK(verify_witness(ColoringRule::constant(1), a));

  const ColoringRule c = n_mod_2();
  const RamseyWitness b = triples(c, 6);
  CHECK(b.color == 0);
  for (Nat k : b.k) CHECK(k % 2 == 0);
  CHECK(verify_witness(c, b));
}

TEST_CASE("triples on random rules") {
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const ColoringRule c = random_rule(rng);
    const std::size_t count = pick(rng, 8) + 1;
    const RamseyWitness w = triples(c, count);
    REQUIRE(w.k.size() == count);
    REQUIRE_MESSAGE(verify_witness(c, w), to_string(c));
    for (std::size_t n = 0; n + 1 < count; ++n) CHECK(w.k_index[n + 1] == w.k[n] + 1);
    if (count >= 3) {
      RamseyWitness m = w;
      m.color = 1 - m.color;
      CHECK_FALSE(verify_witness(c, m));
    }
    if (count >= 2) {
      RamseyWitness m = w;
      std::swap(m.k[0], m.k[1]);
      CHECK_FALSE(verify_witness(c, m));
    }
  }
}

TEST_CASE("brute-force search finds the emitted color") {
  Rng rng(55);
  for (int i = 0; i < 30; ++i) {
    const ColoringRule c = random_rule(rng);
    const RamseyWitness w = triples(c, 4);
    // some 4-subset of [0, w.k.back()] is monochromatic in w.color
    bool found = false;
    const Nat top = w.k.back();
    std::vector<Nat> pickd;
    const auto search = [&](auto&& self, Nat from) -> void {
      if (found) return;
      if (pickd.size() == 4) {
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t b = a + 1; b < 4; ++b)
            for (std::size_t d = b + 1; d < 4; ++d)
              if (c.color(pickd[a], pickd[b], pickd[d]) != w.color) return;
        found = true;
        return;
      }
      for (Nat v = from; v <= top && !found; ++v) {
        pickd.push_back(v);
        self(self, v + 1);
        pickd.pop_back();
      }
    };
    if (top > 40) continue;
    search(search, 0);
    CHECK(found);
  }
}

TEST_CASE("triples ride on the strong-pairs sequence") {
  // with no extra requirement the h sequence is the strong-pairs one; a rule
  // whose 𝔘₀ color class is everything makes the two coincide
  Rng rng(89);
  int seen = 0;
  for (int i = 0; i < 200 && seen < 20; ++i) {
    const ColoringRule c = random_rule(rng);
    StrongPairs sp(c);
    bool all_zero = true;
    for (Nat n = 0; n < c.n_classes() + 2; ++n) all_zero = all_zero && sp.verdict(n);
    if (!all_zero) continue;
    const RamseyWitness t = triples(c, 4);
    if (t.k_index.back() > 2000) continue;
    ++seen;
    const RamseyWitness p = strong_pairs(c, t.k_index.back() + 1);
    for (std::size_t n = 0; n < t.k.size(); ++n) CHECK(p.h[t.k_index[n]] == t.k[n]);
  }
  CHECK(seen > 0);
}
