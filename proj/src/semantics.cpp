#include "ultraforce/semantics.hpp"

#include <algorithm>
#include <unordered_map>

#include "ultraforce/forcing.hpp"

namespace uf {

namespace {

using K = Formula::Kind;
constexpr std::size_t kNoCond = static_cast<std::size_t>(-1);
// Past this an exact scan is not worth it and the cap applies instead.
constexpr Nat kMaxExactScan = 200'000;

const char* const kReasonNumeric = "unbounded numeric quantifier capped at numeric_bound";
const char* const kReasonPool = "set quantifier restricted to set_pool";
const char* const kReasonSpace = "condition quantifier restricted to the extension space";

enum Tag : std::uint8_t { kDirect, kForce, kExistsBelow, kAdequate };

struct MemoKey {
  const Formula* node;
  std::size_t cond;
  Tag tag;
  std::vector<std::uint64_t> fp;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const {
    std::size_t h = std::hash<const void*>()(k.node) ^ (k.cond * 0x9e3779b97f4a7c15ULL) ^ k.tag;
    for (auto v : k.fp) h = h * 1000003 ^ std::hash<std::uint64_t>()(v);
    return h;
  }
};

void taint(TruthValue& t, const char* reason) {
  t.exactness = Exactness::Approximate;
  t.reasons.insert(reason);
}

void absorb(TruthValue& acc, const TruthValue& sub) {
  if (sub.exact()) return;
  acc.exactness = Exactness::Approximate;
  acc.reasons.insert(sub.reasons.begin(), sub.reasons.end());
}

TruthValue exact(bool v) { return TruthValue{v, Exactness::Exact, {}}; }

bool is_universal(K k) { return k == K::Forall || k == K::ForallB || k == K::ForallSet; }

// Bookkeeping for the periodicity bound of one unbounded number quantifier.
struct ScanStats {
  Nat theta = 0;   // largest threshold among the sets the variable meets
  Nat period = 1;  // lcm of their periods
  Nat width = 0;   // longest family whose columns the variable indexes
  Nat offset = 0;  // sum of the variable-free parts of the terms involved
};

struct NotEligible {};

class Machine {
 public:
  Machine(const Universe& u, const ConditionSpace* space) : u_(u), space_(space) {
    for (const auto& s : u.set_pool) pool_.emplace_back(s);
  }

  Nat term(const Term& t, const Env& env) const {
    switch (t.kind) {
      case Term::Kind::Var:
        if (const Nat* v = env.num(t.name)) return *v;
        throw EvalError("unbound number variable " + t.name);
      case Term::Kind::Lit: return t.value;
      case Term::Kind::Succ: return checked_add(term(*t.lhs, env), 1);
      case Term::Kind::Plus: return checked_add(term(*t.lhs, env), term(*t.rhs, env));
      case Term::Kind::Times: return checked_mul(term(*t.lhs, env), term(*t.rhs, env));
      case Term::Kind::Pair: return cantor_pair(term(*t.lhs, env), term(*t.rhs, env));
    }
    return 0;
  }

  SetValue set(const SetTerm& s, const Env& env) const {
    if (s.kind == SetTerm::Kind::Var) {
      if (const SetValue* v = env.set(s.name)) return *v;
      throw EvalError("unbound set variable " + s.name);
    }
    return set(*s.base, env).column(term(*s.index, env));
  }

  TruthValue direct(const Formula& f, Env& env) {
    tick();
    switch (f.kind) {
      case K::In: return exact(set(*f.set, env).member(term(*f.t1, env)));
      case K::Eq: return exact(term(*f.t1, env) == term(*f.t2, env));
      case K::Lt: return exact(term(*f.t1, env) < term(*f.t2, env));
      case K::Uf: throw EvalError("uf atom in direct evaluation: " + print(f));
      case K::And: return connective(f, [&](const Formula& g) { return direct(g, env); });
      case K::Or: return connective(f, [&](const Formula& g) { return direct(g, env); });
      case K::Implies: return connective(f, [&](const Formula& g) { return direct(g, env); });
      case K::Not: {
        TruthValue a = direct(*f.lhs, env);
        a.value = !a.value;
        return a;
      }
      case K::Forall:
      case K::Exists:
      case K::ForallB:
      case K::ExistsB:
        return memo(f, kNoCond, kDirect, env,
                    [&] { return number_quantifier(f, env, false, [&] { return direct(*f.lhs, env); }); });
      case K::ForallSet:
      case K::ExistsSet:
        return memo(f, kNoCond, kDirect, env, [&] {
          const bool guarded = space_ && guard_of(f);
          return set_quantifier(f, env, guarded ? space_values() : pool_, guarded ? kReasonSpace : kReasonPool,
                                [&] { return direct(*f.lhs, env); });
        });
    }
    return exact(false);
  }

  TruthValue force(const Formula& f, Env& env, std::size_t c) {
    tick();
    switch (f.kind) {
      case K::In:
      case K::Eq:
      case K::Lt: return direct(f, env);
      case K::Uf: {
        const SetValue t = set(*f.set, env);
        return exact(difference(space_->meet(c), t.epset()).is_finite());
      }
      case K::And: return connective(f, [&](const Formula& g) { return force(g, env, c); });
      default: return memo(f, c, kForce, env, [&] { return force_compound(f, env, c); });
    }
  }

 private:
  TruthValue force_compound(const Formula& f, Env& env, std::size_t c) {
    switch (f.kind) {
      case K::Or:
        return for_all_exists(f, env, c, [&](std::size_t w) {
          TruthValue a = force(*f.lhs, env, w);
          if (a.value) return a;
          TruthValue b = force(*f.rhs, env, w);
          absorb(b, a);
          return b;
        });
      case K::Not:
        return for_all_below(f, env, c, [&](std::size_t v) {
          TruthValue a = force(*f.lhs, env, v);
          a.value = !a.value;
          return a;
        });
      case K::Implies:
        return for_all_below(f, env, c, [&](std::size_t v) {
          TruthValue a = force(*f.lhs, env, v);
          if (!a.value) {
            a.value = true;
            return a;
          }
          TruthValue b = force(*f.rhs, env, v);
          absorb(b, a);
          return b;
        });
      case K::Forall:
      case K::ForallB:
        return number_quantifier(f, env, true, [&] { return force(*f.lhs, env, c); });
      case K::ForallSet:
        return set_quantifier(f, env, pool_, kReasonPool, [&] { return force(*f.lhs, env, c); });
      case K::Exists:
      case K::ExistsB:
        return for_all_exists(f, env, c, [&](std::size_t w) {
          return number_quantifier(f, env, true, [&] { return force(*f.lhs, env, w); });
        });
      case K::ExistsSet:
        return for_all_exists(f, env, c, [&](std::size_t w) {
          return set_quantifier(f, env, pool_, kReasonPool, [&] { return force(*f.lhs, env, w); });
        });
      default: return force(f, env, c);
    }
  }

  // And, Or, Implies evaluated left to right with short circuit.
  template <class Eval>
  TruthValue connective(const Formula& f, Eval eval) {
    TruthValue a = eval(*f.lhs);
    const bool decided = f.kind == K::Or ? a.value : !a.value;
    if (decided) {
      if (f.kind == K::Implies) a.value = true;
      return a;
    }
    TruthValue b = eval(*f.rhs);
    absorb(b, a);
    return b;
  }

  template <class Body>
  TruthValue for_all_below(const Formula& f, Env& env, std::size_t c, Body body) {
    TruthValue acc = exact(true);
    for (std::size_t v : space_->below(c)) {
      TruthValue r = body(v);
      absorb(acc, r);
      if (!r.value) {
        acc.value = false;
        break;
      }
    }
    if (!adequate(f, env, c)) taint(acc, kReasonSpace);
    return acc;
  }

  template <class Body>
  TruthValue for_all_exists(const Formula& f, Env& env, std::size_t c, Body body) {
    return for_all_below(f, env, c, [&](std::size_t v) {
      return memo(f, v, kExistsBelow, env, [&] {
        TruthValue acc = exact(false);
        for (std::size_t w : space_->below(v)) {
          TruthValue r = body(w);
          absorb(acc, r);
          if (r.value) {
            acc.value = true;
            break;
          }
        }
        if (!adequate(f, env, v)) taint(acc, kReasonSpace);
        return acc;
      });
    });
  }

  template <class Body>
  TruthValue number_quantifier(const Formula& f, Env& env, bool forcing, Body body) {
    const bool universal = is_universal(f.kind);
    Nat bound = 0;
    bool capped = false;
    if (f.kind == K::ForallB || f.kind == K::ExistsB) {
      bound = term(*f.t1, env);
    } else if (auto b = exact_scan_bound(f, env, forcing)) {
      bound = *b;
    } else {
      bound = u_.numeric_bound;
      capped = true;
    }
    TruthValue acc = exact(universal);
    for (Nat n = 0; n < bound; ++n) {
      env.bind_num(f.var, n);
      TruthValue r = body();
      env.pop_num();
      absorb(acc, r);
      if (r.value != universal) {
        acc.value = !universal;
        break;
      }
    }
    if (capped) taint(acc, kReasonNumeric);
    return acc;
  }

  template <class Body>
  TruthValue set_quantifier(const Formula& f, Env& env, const std::vector<SetValue>& domain, const char* reason,
                            Body body) {
    const bool universal = is_universal(f.kind);
    TruthValue acc = exact(universal);
    for (const auto& x : domain) {
      env.bind_set(f.var, x);
      TruthValue r = body();
      env.pop_set();
      absorb(acc, r);
      if (r.value != universal) {
        acc.value = !universal;
        break;
      }
    }
    taint(acc, reason);
    return acc;
  }

  // ---- condition quantifier exactness --------------------------------------

  // The restricted quantifier over space members below c agrees with the
  // unrestricted one when the body's truth at a condition depends only on
  // which cells of ⋂c (cut by the sets its uf atoms mention) the condition
  // meets infinitely, and every combination of cells is realised below c.
  bool adequate(const Formula& f, Env& env, std::size_t c) {
    return memo(f, c, kAdequate, env, [&] { return exact(compute_adequate(f, env, c)); }).value;
  }

  bool compute_adequate(const Formula& f, Env& env, std::size_t c) {
    std::vector<EPSet> relevant;
    std::vector<std::string> blocked;
    if (!collect_uf_sets(f, env, blocked, relevant)) return false;
    std::vector<EPSet> cells{space_->meet(c)};
    for (const auto& r : relevant) {
      std::vector<EPSet> next;
      for (const auto& cell : cells) {
        EPSet a = intersect(cell, r), b = difference(cell, r);
        if (a.is_infinite()) next.push_back(std::move(a));
        if (b.is_infinite()) next.push_back(std::move(b));
      }
      cells = std::move(next);
      if (cells.size() > 6) return false;
    }
    if (cells.size() <= 1) return true;
    std::vector<bool> seen(std::size_t{1} << cells.size(), false);
    for (std::size_t v : space_->below(c)) {
      std::size_t mask = 0;
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (intersect(space_->meet(v), cells[i]).is_infinite()) mask |= std::size_t{1} << i;
      seen[mask] = true;
    }
    for (std::size_t m = 1; m < seen.size(); ++m)
      if (!seen[m]) return false;
    return true;
  }

  // Sets named by uf atoms under f. Closed bounded quantifiers are unrolled;
  // a uf atom depending on any other variable bound inside f defeats the
  // certificate.
  bool collect_uf_sets(const Formula& f, Env& env, std::vector<std::string>& blocked, std::vector<EPSet>& out) {
    auto is_blocked = [&](const std::string& n) {
      return std::find(blocked.begin(), blocked.end(), n) != blocked.end();
    };
    switch (f.kind) {
      case K::In:
      case K::Eq:
      case K::Lt: return true;
      case K::Uf: {
        const FreeVars v = free_vars(*f.set);
        for (const auto& n : v.nums)
          if (is_blocked(n)) return false;
        for (const auto& n : v.sets)
          if (is_blocked(n)) return false;
        const SetValue val = set(*f.set, env);
        if (val.is_family()) return false;
        if (std::find(out.begin(), out.end(), val.epset()) == out.end()) out.push_back(val.epset());
        return out.size() <= 16;
      }
      case K::ForallB:
      case K::ExistsB: {
        for (const auto& n : free_vars(*f.t1))
          if (is_blocked(n)) return false;
        const Nat bound = term(*f.t1, env);
        if (bound > 64) return false;
        std::vector<std::string> saved = blocked;
        std::erase(blocked, f.var);
        bool ok = true;
        for (Nat n = 0; ok && n < bound; ++n) {
          env.bind_num(f.var, n);
          ok = collect_uf_sets(*f.lhs, env, blocked, out);
          env.pop_num();
        }
        blocked = std::move(saved);
        return ok;
      }
      case K::Forall:
      case K::Exists:
      case K::ForallSet:
      case K::ExistsSet: {
        blocked.push_back(f.var);
        const bool ok = collect_uf_sets(*f.lhs, env, blocked, out);
        blocked.pop_back();
        return ok;
      }
      default:
        return collect_uf_sets(*f.lhs, env, blocked, out) && (!f.rhs || collect_uf_sets(*f.rhs, env, blocked, out));
    }
  }

  // ---- periodicity bound -----------------------------------------------------

  struct ScanCtx {
    std::string z;
    std::vector<std::pair<std::string, Nat>> bounded;  // inner bounded variables and bound values
    std::vector<std::pair<std::string, const std::vector<SetValue>*>> inner_sets;
  };

  std::optional<Nat> exact_scan_bound(const Formula& q, Env& env, bool forcing) {
    ScanCtx ctx{q.var, {}, {}};
    ScanStats st;
    try {
      analyze(*q.lhs, env, ctx, st, forcing);
      Nat b = checked_add(checked_add(st.theta, st.width), st.offset);
      b = checked_add(b, checked_add(checked_mul(2, st.period), 1));
      if (b > kMaxExactScan) return std::nullopt;
      return b;
    } catch (const NotEligible&) {
      return std::nullopt;
    } catch (const OverflowError&) {
      return std::nullopt;
    }
  }

  bool mentions(const Formula& f, const std::string& z) { return fv(f).nums.count(z) > 0; }

  void analyze(const Formula& f, Env& env, ScanCtx& ctx, ScanStats& st, bool forcing) {
    if (!mentions(f, ctx.z)) return;  // constant in z
    switch (f.kind) {
      case K::In:
        linear_part(*f.t1, env, ctx, st);
        set_part(*f.set, free_vars(*f.t1).count(ctx.z) > 0, env, ctx, st);
        return;
      case K::Eq:
      case K::Lt:
        linear_part(*f.t1, env, ctx, st);
        linear_part(*f.t2, env, ctx, st);
        return;
      case K::Uf:
      case K::Forall:
      case K::Exists: throw NotEligible{};
      case K::And:
      case K::Or:
      case K::Implies:
        analyze(*f.lhs, env, ctx, st, forcing);
        analyze(*f.rhs, env, ctx, st, forcing);
        return;
      case K::Not: analyze(*f.lhs, env, ctx, st, forcing); return;
      case K::ForallB:
      case K::ExistsB: {
        if (free_vars(*f.t1).count(ctx.z)) throw NotEligible{};
        ctx.bounded.emplace_back(f.var, upper(*f.t1, env, ctx));
        analyze(*f.lhs, env, ctx, st, forcing);
        ctx.bounded.pop_back();
        return;
      }
      case K::ForallSet:
      case K::ExistsSet: {
        const bool guarded = !forcing && space_ && guard_of(f);
        ctx.inner_sets.emplace_back(f.var, guarded ? &space_values() : &pool_);
        analyze(*f.lhs, env, ctx, st, forcing);
        ctx.inner_sets.pop_back();
        return;
      }
    }
  }

  // Upper bound for a z-free term, with inner bounded variables at their bound.
  Nat upper(const Term& t, Env& env, const ScanCtx& ctx) {
    switch (t.kind) {
      case Term::Kind::Var: {
        if (t.name == ctx.z) throw NotEligible{};
        for (auto it = ctx.bounded.rbegin(); it != ctx.bounded.rend(); ++it)
          if (it->first == t.name) return it->second;
        if (const Nat* v = env.num(t.name)) return *v;
        throw NotEligible{};
      }
      case Term::Kind::Lit: return t.value;
      case Term::Kind::Succ: return checked_add(upper(*t.lhs, env, ctx), 1);
      case Term::Kind::Plus: return checked_add(upper(*t.lhs, env, ctx), upper(*t.rhs, env, ctx));
      case Term::Kind::Times: return checked_mul(upper(*t.lhs, env, ctx), upper(*t.rhs, env, ctx));
      case Term::Kind::Pair: return cantor_pair(upper(*t.lhs, env, ctx), upper(*t.rhs, env, ctx));
    }
    return 0;
  }

  // Requires t linear in z and adds its z-free parts to the offset.
  void linear_part(const Term& t, Env& env, const ScanCtx& ctx, ScanStats& st) {
    if (!free_vars(t).count(ctx.z)) {
      st.offset = checked_add(st.offset, upper(t, env, ctx));
      return;
    }
    switch (t.kind) {
      case Term::Kind::Var:
      case Term::Kind::Lit: return;
      case Term::Kind::Succ:
        st.offset = checked_add(st.offset, 1);
        linear_part(*t.lhs, env, ctx, st);
        return;
      case Term::Kind::Plus:
        linear_part(*t.lhs, env, ctx, st);
        linear_part(*t.rhs, env, ctx, st);
        return;
      case Term::Kind::Times:
        if (free_vars(*t.lhs).count(ctx.z) && free_vars(*t.rhs).count(ctx.z)) throw NotEligible{};
        linear_part(*t.lhs, env, ctx, st);
        linear_part(*t.rhs, env, ctx, st);
        return;
      case Term::Kind::Pair: throw NotEligible{};
    }
  }

  std::vector<SetValue> candidates(const std::string& name, Env& env, const ScanCtx& ctx) {
    for (auto it = ctx.inner_sets.rbegin(); it != ctx.inner_sets.rend(); ++it)
      if (it->first == name) return *it->second;
    if (const SetValue* v = env.set(name)) return {*v};
    throw NotEligible{};
  }

  static void cover(const EPSet& s, Nat extra_period, ScanStats& st) {
    st.theta = std::max(st.theta, s.threshold());
    st.period = lcm(st.period, checked_mul(s.period(), extra_period));
    if (st.period > kMaxExactScan) throw NotEligible{};
  }

  // Subscripting an EPSet r times keeps its threshold and multiplies its
  // period by 2^r.
  static void cover_value(const SetValue& v, std::size_t subs, ScanStats& st) {
    if (!v.is_family()) {
      if (subs >= 20) throw NotEligible{};
      cover(v.epset(), Nat{1} << subs, st);
      return;
    }
    if (subs == 0) throw NotEligible{};  // membership would unpair the variable
    for (const auto& col : v.columns()) cover_value(col, subs - 1, st);
    cover_value(v.tail(), subs - 1, st);
  }

  void set_part(const SetTerm& s, bool member_varies, Env& env, const ScanCtx& ctx, ScanStats& st) {
    std::vector<const Term*> indices;
    const SetTerm* base = &s;
    while (base->kind == SetTerm::Kind::Sub) {
      indices.push_back(base->index.get());
      base = base->base.get();
    }
    bool index_varies = false;
    for (const Term* i : indices) {
      linear_part(*i, env, ctx, st);
      index_varies = index_varies || free_vars(*i).count(ctx.z) > 0;
    }
    const std::vector<SetValue> values = candidates(base->name, env, ctx);
    if (!index_varies) {
      if (!member_varies) return;
      for (const auto& v : values) cover_value(v, indices.size(), st);
      return;
    }
    // Only a single subscript of a family may move with z: past the family's
    // listed columns every column is the tail.
    if (indices.size() != 1) throw NotEligible{};
    for (const auto& v : values) {
      if (!v.is_family()) throw NotEligible{};
      st.width = std::max<Nat>(st.width, v.columns().size());
      for (const auto& col : v.columns()) cover(col, 1, st);
      cover(v.tail(), 1, st);
    }
  }

  // ---- caches ----------------------------------------------------------------

  const FreeVars& fv(const Formula& f) {
    auto it = fv_cache_.find(&f);
    if (it == fv_cache_.end()) it = fv_cache_.emplace(&f, free_vars(f)).first;
    return it->second;
  }

  bool guard_of(const Formula& f) {
    auto it = guard_cache_.find(&f);
    if (it != guard_cache_.end()) return it->second;
    bool hit = false;
    const Formula& body = *f.lhs;
    const K want = f.kind == K::ForallSet ? K::Implies : K::And;
    if (body.kind == want) hit = match_preceq_guard(*body.lhs, f.var).has_value();
    guard_cache_.emplace(&f, hit);
    return hit;
  }

  const std::vector<SetValue>& space_values() {
    if (space_vals_.empty())
      for (std::size_t i = 0; i < space_->size(); ++i) space_vals_.push_back(space_->value(i));
    return space_vals_;
  }

  std::uint64_t intern(const SetValue& v) {
    auto it = interned_.find(v);
    if (it == interned_.end()) it = interned_.emplace(v, interned_.size() + 1).first;
    return it->second;
  }

  template <class Compute>
  TruthValue memo(const Formula& f, std::size_t c, Tag tag, Env& env, Compute compute) {
    MemoKey key{&f, c, tag, {}};
    const FreeVars& vars = fv(f);
    key.fp.reserve(vars.nums.size() + vars.sets.size());
    for (const auto& n : vars.nums) {
      const Nat* v = env.num(n);
      if (!v) throw EvalError("unbound number variable " + n);
      key.fp.push_back(*v);
    }
    for (const auto& s : vars.sets) {
      const SetValue* v = env.set(s);
      if (!v) throw EvalError("unbound set variable " + s);
      key.fp.push_back(intern(*v));
    }
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    TruthValue r = compute();
    memo_.emplace(std::move(key), r);
    return r;
  }

  void tick() {
    if (++nodes_ > u_.node_budget) throw ResourceError("node budget exceeded");
  }

  const Universe& u_;
  const ConditionSpace* space_;
  std::vector<SetValue> pool_;
  std::vector<SetValue> space_vals_;
  std::size_t nodes_ = 0;
  std::unordered_map<const Formula*, FreeVars> fv_cache_;
  std::unordered_map<const Formula*, bool> guard_cache_;
  std::unordered_map<SetValue, std::uint64_t> interned_;
  std::unordered_map<MemoKey, TruthValue, MemoHash> memo_;
};

}  // namespace

Nat eval_term(const Term& t, const Env& env) {
  const Universe u;
  return Machine(u, nullptr).term(t, env);
}

SetValue eval_set_term(const SetTerm& s, const Env& env) {
  const Universe u;
  return Machine(u, nullptr).set(s, env);
}

TruthValue eval_direct(const FormulaPtr& phi, const Env& env, const Universe& u) {
  Machine m(u, nullptr);
  Env e = env;
  return m.direct(*phi, e);
}

TruthValue eval_forcing(const FormulaPtr& phi, const Env& env, const ConditionSpace& space, std::size_t at,
                        const Universe& u) {
  Machine m(u, &space);
  Env e = env;
  return m.force(*phi, e, at);
}

TruthValue eval_forcing(const FormulaPtr& phi, const Env& env, const Condition& cond, const Universe& u) {
  const ConditionSpace space(cond, u);
  return eval_forcing(phi, env, space, 0, u);
}

TruthValue eval_translated(const FormulaPtr& phi, const Env& env, const ConditionSpace& space, std::size_t at,
                           const Universe& u) {
  const std::string name = fresh_name("U", all_names(*phi));
  const FormulaPtr t = translate(phi, name);
  Machine m(u, &space);
  Env e = env;
  e.bind_set(name, space.value(at));
  return m.direct(*t, e);
}

TruthValue eval_translated(const FormulaPtr& phi, const Env& env, const Condition& cond, const Universe& u) {
  const ConditionSpace space(cond, u);
  return eval_translated(phi, env, space, 0, u);
}

}  // namespace uf
