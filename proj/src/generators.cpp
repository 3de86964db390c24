#include "ultraforce/generators.hpp"

namespace uf {

std::size_t pick(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

namespace {

bool coin(Rng& rng, unsigned one_in) { return pick(rng, one_in) == 0; }

struct Scope {
  std::vector<std::string> nums, sets;
};

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const GenOptions& o) : rng_(rng), o_(o) {}

  TermPtr term(const std::vector<std::string>& vars, std::size_t depth) {
    if (depth == 0 || coin(rng_, 2)) {
      if (!vars.empty() && !coin(rng_, 3)) return fm::var(vars[pick(rng_, vars.size())]);
      return fm::lit(pick(rng_, o_.max_literal + 1));
    }
    switch (pick(rng_, o_.full_terms ? 4 : 3)) {
      case 0: return fm::succ(term(vars, depth - 1));
      case 1: return fm::plus(term(vars, depth - 1), term(vars, depth - 1));
      case 2:
        // keep products linear unless full terms were requested
        if (!o_.full_terms) return fm::times(fm::lit(pick(rng_, 3) + 1), term(vars, depth - 1));
        return fm::times(term(vars, depth - 1), term(vars, depth - 1));
      default: return fm::pair(term(vars, depth - 1), term(vars, depth - 1));
    }
  }

  SetTermPtr set_term(const Scope& s) {
    SetTermPtr t = fm::svar(s.sets[pick(rng_, s.sets.size())]);
    const std::size_t subs = coin(rng_, 3) ? (o_.full_terms ? pick(rng_, 2) + 1 : 1) : 0;
    for (std::size_t i = 0; i < subs; ++i) t = fm::sub(t, term(s.nums, 1));
    return t;
  }

  FormulaPtr atom(const Scope& s) {
    const unsigned w_uf = (o_.uf_atoms && !s.sets.empty()) ? o_.uf_weight : 0;
    const unsigned w_in = s.sets.empty() ? 0 : 3;
    const unsigned total = w_uf + w_in + 2;
    unsigned r = static_cast<unsigned>(pick(rng_, total));
    if (r < w_uf) return fm::uf(set_term(s));
    r -= w_uf;
    if (r < w_in) return fm::in(term(s.nums, 1), set_term(s));
    r -= w_in;
    if (r == 0) return fm::eq(term(s.nums, 1), term(s.nums, 1));
    return fm::lt(term(s.nums, 1), term(s.nums, 1));
  }

  FormulaPtr formula(Scope s, std::size_t depth) {
    if (depth == 0 || coin(rng_, 4)) return atom(s);
    using K = Formula::Kind;
    std::vector<std::pair<K, unsigned>> menu = {{K::And, 2}, {K::Implies, o_.implies_weight}, {K::ForallB, 1}};
    if (!o_.normalized) {
      menu.insert(menu.end(), {{K::Or, 2}, {K::Not, 2}, {K::ExistsB, 1}});
    }
    if (o_.unbounded_quantifiers) {
      menu.push_back({K::Forall, 1});
      if (!o_.normalized) menu.push_back({K::Exists, 1});
    }
    if (o_.set_quantifiers) {
      menu.push_back({K::ForallSet, 1});
      if (!o_.normalized) menu.push_back({K::ExistsSet, 1});
    }
    unsigned total = 0;
    for (const auto& [k, w] : menu) total += w;
    unsigned r = static_cast<unsigned>(pick(rng_, total));
    K kind = menu.front().first;
    for (const auto& [k, w] : menu) {
      if (r < w) { kind = k; break; }
      r -= w;
    }
    switch (kind) {
      case K::And: return fm::land(formula(s, depth - 1), formula(s, depth - 1));
      case K::Or: return fm::lor(formula(s, depth - 1), formula(s, depth - 1));
      case K::Implies: return fm::implies(formula(s, depth - 1), formula(s, depth - 1));
      case K::Not: return fm::lnot(formula(s, depth - 1));
      case K::Forall:
      case K::Exists:
      case K::ForallB:
      case K::ExistsB: {
        static const char* names[] = {"a", "b", "c", "d"};
        const std::string x = names[pick(rng_, 4)];
        TermPtr bound = fm::lit(pick(rng_, o_.max_literal) + 1);
        if (!s.nums.empty() && coin(rng_, 4)) bound = fm::var(s.nums[pick(rng_, s.nums.size())]);
        Scope inner = s;
        inner.nums.push_back(x);
        FormulaPtr body = formula(inner, depth - 1);
        if (kind == K::Forall) return fm::forall(x, body);
        if (kind == K::Exists) return fm::exists(x, body);
        if (kind == K::ForallB) return fm::forallb(x, bound, body);
        return fm::existsb(x, bound, body);
      }
      default: {
        const std::string x = coin(rng_, 2) ? "Z" : "Q";
        Scope inner = s;
        inner.sets.push_back(x);
        FormulaPtr body = formula(inner, depth - 1);
        return kind == K::ForallSet ? fm::forallset(x, body) : fm::existsset(x, body);
      }
    }
  }

 private:
  Rng& rng_;
  const GenOptions& o_;
};

}  // namespace

FormulaPtr random_formula(Rng& rng, const GenOptions& opts) {
  FormulaGen g(rng, opts);
  return g.formula(Scope{opts.num_vars, opts.set_vars}, opts.max_depth);
}

TermPtr random_term(Rng& rng, const std::vector<std::string>& vars, const GenOptions& opts) {
  FormulaGen g(rng, opts);
  return g.term(vars, 2);
}

EPSet random_epset(Rng& rng, Nat max_threshold, Nat max_period) {
  std::vector<bool> prefix(pick(rng, max_threshold + 1));
  std::vector<bool> residues(pick(rng, max_period) + 1);
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix[i] = coin(rng, 2);
  for (std::size_t i = 0; i < residues.size(); ++i) residues[i] = coin(rng, 2);
  return EPSet::from_bits(prefix, residues);
}

Condition random_condition(Rng& rng, const std::vector<EPSet>& pool, std::size_t max_len) {
  for (;;) {
    std::vector<EPSet> ms;
    const std::size_t len = pick(rng, max_len + 1);
    for (std::size_t i = 0; i < len; ++i) ms.push_back(pool[pick(rng, pool.size())]);
    if (check_ult(ms)) return Condition(std::move(ms));
  }
}

}  // namespace uf
