#include "ultraforce/forcing.hpp"

#include <stdexcept>

namespace uf {

std::string TranslationContext::fresh(const std::string& stem) {
  for (;;) {
    std::string cand = stem + std::to_string(++counter_);
    if (avoid_.insert(cand).second) return cand;
  }
}

namespace {

// "Z is finite" for Z = {y : member}: ∃b ∀y (member → y < b).
FormulaPtr finite_set(const std::string& y, const FormulaPtr& member, TranslationContext& ctx) {
  const std::string b = ctx.fresh("b");
  return fm::exists(b, fm::forall(y, fm::implies(member, fm::lt(fm::var(y), fm::var(b)))));
}

// y lies in every column V_n with n < k.
FormulaPtr in_first_columns(const std::string& y, const std::string& k, const std::string& v,
                            TranslationContext& ctx) {
  const std::string n = ctx.fresh("n");
  return fm::forallb(n, fm::var(k), fm::in(fm::var(y), fm::sub(fm::svar(v), fm::var(n))));
}

}  // namespace

FormulaPtr expand_ult(const std::string& v, TranslationContext& ctx) {
  const std::string k = ctx.fresh("k");
  const std::string x = ctx.fresh("x");
  const std::string y = ctx.fresh("y");
  return fm::forall(
      k, fm::forall(x, fm::exists(y, fm::land(fm::lt(fm::var(x), fm::var(y)),
                                              in_first_columns(y, k, v, ctx)))));
}

FormulaPtr expand_ult(const std::string& v) {
  TranslationContext ctx({v});
  return expand_ult(v, ctx);
}

FormulaPtr expand_preceq(const std::string& v, const std::string& u, TranslationContext& ctx) {
  FormulaPtr ult = expand_ult(v, ctx);
  const std::string n = ctx.fresh("n");
  const std::string m = ctx.fresh("m");
  const std::string y = ctx.fresh("y");
  FormulaPtr contained = fm::forall(
      y, fm::implies(fm::in(fm::var(y), fm::sub(fm::svar(v), fm::var(m))),
                     fm::in(fm::var(y), fm::sub(fm::svar(u), fm::var(n)))));
  return fm::land(ult, fm::forall(n, fm::exists(m, contained)));
}

FormulaPtr expand_preceq(const std::string& v, const std::string& u) {
  TranslationContext ctx({v, u});
  return expand_preceq(v, u, ctx);
}

FormulaPtr expand_forces_uf(const std::string& u, const SetTermPtr& t, TranslationContext& ctx) {
  const std::string k = ctx.fresh("k");
  const std::string y = ctx.fresh("y");
  FormulaPtr outside = fm::land(in_first_columns(y, k, u, ctx), fm::lnot(fm::in(fm::var(y), t)));
  return fm::exists(k, finite_set(y, outside, ctx));
}

std::optional<std::string> match_preceq_guard(const Formula& guard, const std::string& v) {
  if (guard.kind != Formula::Kind::And) return std::nullopt;
  FreeVars fv = free_vars(guard);
  if (!fv.nums.empty() || fv.sets.size() != 2 || !fv.sets.count(v)) return std::nullopt;
  fv.sets.erase(v);
  const std::string u = *fv.sets.begin();
  if (!alpha_equal(guard, *expand_preceq(v, u))) return std::nullopt;
  return u;
}

namespace {

class Translator {
 public:
  explicit Translator(TranslationContext& ctx) : ctx_(ctx) {}

  FormulaPtr run(const FormulaPtr& f, const std::string& u) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::In:
      case K::Eq:
      case K::Lt: return f;
      case K::Uf: return expand_forces_uf(u, f->set, ctx_);
      case K::And: return fm::land(run(f->lhs, u), run(f->rhs, u));
      case K::Or:
        return for_all_exists(u, [&](const std::string& w) {
          return fm::lor(run(f->lhs, w), run(f->rhs, w));
        });
      case K::Not: {
        const std::string v = ctx_.fresh("V");
        return fm::forallset(v, fm::implies(expand_preceq(v, u, ctx_), fm::lnot(run(f->lhs, v))));
      }
      case K::Implies: {
        const std::string v = ctx_.fresh("V");
        FormulaPtr guard = expand_preceq(v, u, ctx_);
        return fm::forallset(v, fm::implies(guard, fm::implies(run(f->lhs, v), run(f->rhs, v))));
      }
      case K::Forall: return fm::forall(f->var, run(f->lhs, u));
      case K::ForallB: return fm::forallb(f->var, f->t1, run(f->lhs, u));
      case K::ForallSet: return fm::forallset(f->var, run(f->lhs, u));
      case K::Exists:
        return for_all_exists(u, [&](const std::string& w) { return fm::exists(f->var, run(f->lhs, w)); });
      case K::ExistsB:
        return for_all_exists(
            u, [&](const std::string& w) { return fm::existsb(f->var, f->t1, run(f->lhs, w)); });
      case K::ExistsSet:
        return for_all_exists(
            u, [&](const std::string& w) { return fm::existsset(f->var, run(f->lhs, w)); });
    }
    return f;
  }

 private:
  // ∀²V ⪯ U ∃²W ⪯ V body(W)
  template <class Body>
  FormulaPtr for_all_exists(const std::string& u, Body body) {
    const std::string v = ctx_.fresh("V");
    const std::string w = ctx_.fresh("W");
    FormulaPtr outer_guard = expand_preceq(v, u, ctx_);
    FormulaPtr inner_guard = expand_preceq(w, v, ctx_);
    FormulaPtr inner = fm::existsset(w, fm::land(inner_guard, body(w)));
    return fm::forallset(v, fm::implies(outer_guard, inner));
  }

  TranslationContext& ctx_;
};

// Renames every binder of `name` in f to a name outside `avoid`.
FormulaPtr rename_binders(const FormulaPtr& f, const std::string& name, std::set<std::string>& avoid) {
  using K = Formula::Kind;
  Formula g = *f;
  if (g.lhs) g.lhs = rename_binders(g.lhs, name, avoid);
  if (g.rhs) g.rhs = rename_binders(g.rhs, name, avoid);
  if ((g.kind == K::ForallSet || g.kind == K::ExistsSet) && g.var == name) {
    const std::string fresh = fresh_name(name, avoid);
    avoid.insert(fresh);
    g.lhs = substitute_set(g.lhs, name, fm::svar(fresh));
    g.var = fresh;
  }
  return std::make_shared<const Formula>(std::move(g));
}

}  // namespace

FormulaPtr translate(const FormulaPtr& phi, const std::string& cond_var) {
  if (!is_set_var_name(cond_var))
    throw std::invalid_argument("condition variable must be a set variable: " + cond_var);
  if (free_vars(*phi).sets.count(cond_var))
    throw std::invalid_argument("condition variable " + cond_var + " occurs free in the formula");
  std::set<std::string> avoid = all_names(*phi);
  FormulaPtr f = phi;
  if (avoid.count(cond_var)) f = rename_binders(phi, cond_var, avoid);
  avoid = all_names(*f);
  avoid.insert(cond_var);
  TranslationContext ctx(avoid);
  return Translator(ctx).run(f, cond_var);
}

}  // namespace uf
