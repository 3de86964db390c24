#include "ultraforce/harness.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>

#include "ultraforce/generators.hpp"

namespace uf {

namespace {

using Test = std::function<std::optional<std::string>(const FormulaPtr&, const Universe&)>;

struct Bindings {
  Env env;
  std::string text;
};

Bindings draw_bindings(Rng& rng, const Universe& u) {
  Bindings b;
  const Nat p = pick(rng, 6);
  const EPSet& x = u.set_pool[pick(rng, u.set_pool.size())];
  const EPSet& y = u.set_pool[pick(rng, u.set_pool.size())];
  b.env.bind_num("p", p).bind_set("X", x).bind_set("Y", y);
  b.text = "p=" + std::to_string(p) + " X=" + x.to_string() + " Y=" + y.to_string();
  return b;
}

GenOptions gen_options(const HarnessOptions& o) {
  GenOptions g;
  g.max_depth = o.max_depth;
  g.normalized = true;
  return g;
}

Rng lemma_rng(const HarnessOptions& o, std::uint64_t tag) { return Rng(o.seed * 0x9E3779B97F4A7C15ULL ^ tag); }

void check_universe(const Universe& u) {
  if (u.set_pool.empty() || u.extension_pool.empty())
    throw std::invalid_argument("the harness needs nonempty set and extension pools");
}

class Runner {
 public:
  /// Axiom lemmas test fixed shapes, so only their universe is shrunk.
  Runner(std::string name, const HarnessOptions& o, bool shrink_formula = true)
      : o_(o), shrink_formula_(shrink_formula), start_(std::chrono::steady_clock::now()) {
    report_.lemma = std::move(name);
  }

  bool done() const { return report_.failures.size() >= o_.max_failures; }

  void run(const FormulaPtr& f, const Universe& u, const Condition& c, const std::string& env, const Test& test) {
    const std::size_t instance = report_.tried++;
    std::optional<std::string> detail;
    try {
      detail = test(f, u);
    } catch (const std::exception& e) {
      report_.failures.push_back({instance, print(f), print(f), c.to_string(), env, to_string(u),
                                  std::string("error: ") + e.what()});
      return;
    }
    if (!detail) return;
    const auto fails = [&](const FormulaPtr& g, const Universe& v) {
      if (g != f && !shrink_formula_) return false;
      try {
        return test(g, v).has_value();
      } catch (const std::exception&) {
        return false;
      }
    };
    auto [small, su] = shrink(f, u, fails);
    report_.failures.push_back(
        {instance, print(small), print(f), c.to_string(), env, to_string(su), *test(small, su)});
  }

  LemmaReport finish() {
    report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  const HarnessOptions& o_;
  bool shrink_formula_;
  LemmaReport report_;
  std::chrono::steady_clock::time_point start_;
};

std::string show(const TruthValue& t) {
  return std::string(t.value ? "true" : "false") + (t.exact() ? "" : " (approximate)");
}

// Formulas one node smaller: some subformula replaced by one of its own
// formula children.
void smaller(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->lhs) out.push_back(f->lhs);
  if (f->rhs) out.push_back(f->rhs);
  const auto rebuild = [&](const FormulaPtr& lhs, const FormulaPtr& rhs) {
    auto g = std::make_shared<Formula>(*f);
    g->lhs = lhs;
    g->rhs = rhs;
    return FormulaPtr(g);
  };
  if (f->lhs) {
    std::vector<FormulaPtr> sub;
    smaller(f->lhs, sub);
    for (auto& s : sub) out.push_back(rebuild(s, f->rhs));
  }
  if (f->rhs) {
    std::vector<FormulaPtr> sub;
    smaller(f->rhs, sub);
    for (auto& s : sub) out.push_back(rebuild(f->lhs, s));
  }
}

std::vector<Universe> smaller(const Universe& u) {
  std::vector<Universe> out;
  if (u.extension_depth > 1) {
    Universe v = u;
    --v.extension_depth;
    out.push_back(std::move(v));
  }
  // drop a set together with its complement so the pool stays closed
  for (std::size_t i = 0; i < u.extension_pool.size(); ++i) {
    const EPSet x = u.extension_pool[i], cx = complement(x);
    Universe v = u;
    std::erase_if(v.extension_pool, [&](const EPSet& s) { return s == x || s == cx; });
    if (!v.extension_pool.empty()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::pair<FormulaPtr, Universe> shrink(FormulaPtr f, Universe u, const FailureTest& fails) {
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<FormulaPtr> fs;
    smaller(f, fs);
    for (const auto& g : fs)
      if (fails(g, u)) {
        f = g;
        progress = true;
        break;
      }
    if (progress) continue;
    for (auto& v : smaller(u))
      if (fails(f, v)) {
        u = std::move(v);
        progress = true;
        break;
      }
  }
  return {std::move(f), std::move(u)};
}

LemmaReport check_monotonicity(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  Rng rng = lemma_rng(o, 1);
  Runner run("monotonicity", o);
  const GenOptions g = gen_options(o);
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    const FormulaPtr f = random_formula(rng, g);
    const Bindings b = draw_bindings(rng, u);
    const Condition c = random_condition(rng, u.extension_pool, 2);
    const std::size_t draw = rng();
    run.run(f, u, c, b.text, [&](const FormulaPtr& phi, const Universe& v) -> std::optional<std::string> {
      const ConditionSpace space(c, v);
      const auto& below = space.below(0);
      const std::size_t at = below[draw % below.size()];
      const TruthValue hi = eval_forcing(phi, b.env, space, 0, v);
      const TruthValue lo = eval_forcing(phi, b.env, space, at, v);
      if (hi.value && !lo.value)
        return "forced at the root but not at " + space.at(at).to_string() + ": " + show(lo);
      return std::nullopt;
    });
  }
  return run.finish();
}

LemmaReport check_reflection(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  Rng rng = lemma_rng(o, 2);
  Runner run("reflection", o);
  GenOptions g = gen_options(o);
  g.uf_atoms = false;
  g.set_quantifiers = false;
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    // draw from the periodicity-exact fragment
    FormulaPtr f;
    Bindings b;
    for (int attempt = 0; attempt < 100; ++attempt) {
      f = random_formula(rng, g);
      b = draw_bindings(rng, u);
      if (eval_direct(f, b.env, u).exact()) break;
    }
    const Condition c = random_condition(rng, u.extension_pool, 2);
    run.run(f, u, c, b.text, [&](const FormulaPtr& phi, const Universe& v) -> std::optional<std::string> {
      const TruthValue truth = eval_direct(phi, b.env, v);
      if (!truth.exact()) return std::nullopt;  // outside the fragment
      const TruthValue forced = eval_forcing(phi, b.env, c, v);
      if (forced.value != truth.value || !forced.exact())
        return "direct " + show(truth) + ", forced " + show(forced);
      return std::nullopt;
    });
  }
  return run.finish();
}

LemmaReport check_uf_axioms(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  if (!u.extension_pool_complement_closed())
    throw std::invalid_argument("the 𝔘 axioms need a complement-closed extension pool");
  static const std::vector<FormulaPtr> axioms = {
      parse_formula("(implies (uf X) (forall x (exists y (and (< x y) (in y X)))))"),
      parse_formula("(implies (and (uf X) (uf Y)) (uf Z))"),
      parse_formula("(implies (and (uf X) (forall y (implies (in y X) (in y Y)))) (uf Y))"),
      parse_formula("(or (uf X) (uf C))"),
  };
  Rng rng = lemma_rng(o, 3);
  Runner run("uf-axioms", o, false);
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    const Condition c = random_condition(rng, u.extension_pool, 2);
    const std::size_t k = i % axioms.size();
    const EPSet& x = u.set_pool[pick(rng, u.set_pool.size())];
    // axiom 3 is vacuous unless Y tends to contain X
    const EPSet y = k == 2 && pick(rng, 2) ? unite(x, u.set_pool[pick(rng, u.set_pool.size())])
                                           : u.set_pool[pick(rng, u.set_pool.size())];
    Env env;
    env.bind_set("X", x).bind_set("Y", y).bind_set("Z", intersect(x, y)).bind_set("C", complement(x));
    const std::string text = "X=" + x.to_string() + " Y=" + y.to_string();
    run.run(axioms[k], u, c, text, [&](const FormulaPtr& phi, const Universe& v) -> std::optional<std::string> {
      const TruthValue r = eval_forcing(phi, env, c, v);
      if (!r.value) return "axiom " + std::to_string(k + 1) + " not forced: " + show(r);
      return std::nullopt;
    });
  }
  return run.finish();
}

LemmaReport check_modus_ponens(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  Rng rng = lemma_rng(o, 4);
  Runner run("mp", o);
  const GenOptions g = gen_options(o);
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    const FormulaPtr a = random_formula(rng, g);
    FormulaPtr b = random_formula(rng, g);
    switch (pick(rng, 3)) {
      case 0: b = a; break;
      case 1: b = fm::land(a, b); break;
      default: break;
    }
    const Bindings bind = draw_bindings(rng, u);
    const Condition c = random_condition(rng, u.extension_pool, 2);
    // shrinking works on the implication, whose two sides are φ and ψ
    run.run(fm::implies(a, b), u, c, bind.text,
            [&](const FormulaPtr& imp, const Universe& v) -> std::optional<std::string> {
              if (imp->kind != Formula::Kind::Implies) return std::nullopt;
              const ConditionSpace space(c, v);
              const TruthValue fa = eval_forcing(imp->lhs, bind.env, space, 0, v);
              if (!fa.value) return std::nullopt;
              const TruthValue fi = eval_forcing(imp, bind.env, space, 0, v);
              if (!fi.value) return std::nullopt;
              const TruthValue fb = eval_forcing(imp->rhs, bind.env, space, 0, v);
              if (!fb.value) return "φ and φ→ψ forced, ψ " + show(fb);
              return std::nullopt;
            });
  }
  return run.finish();
}

LemmaReport check_double_negation(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  Rng rng = lemma_rng(o, 5);
  Runner run("dn", o);
  const GenOptions g = gen_options(o);
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    const FormulaPtr f = random_formula(rng, g);
    const Bindings b = draw_bindings(rng, u);
    const Condition c = random_condition(rng, u.extension_pool, 2);
    run.run(f, u, c, b.text, [&](const FormulaPtr& phi, const Universe& v) -> std::optional<std::string> {
      const ConditionSpace space(c, v);
      const FormulaPtr nn = fm::lnot(fm::lnot(phi));
      if (const TruthValue r = eval_forcing(fm::implies(phi, nn), b.env, space, 0, v); !r.value)
        return "φ→¬¬φ not forced: " + show(r);
      if (const TruthValue r = eval_forcing(fm::implies(nn, phi), b.env, space, 0, v); !r.value)
        return "¬¬φ→φ not forced: " + show(r);
      return std::nullopt;
    });
  }
  return run.finish();
}

LemmaReport check_quantifier_axioms(const HarnessOptions& o, const Universe& u) {
  check_universe(u);
  Rng rng = lemma_rng(o, 6);
  Runner run("quantifier-axioms", o, false);
  GenOptions g = gen_options(o);
  g.num_vars = {"p", "q"};
  g.set_vars = {"X", "Y", "W"};
  for (std::size_t i = 0; i < o.samples && !run.done(); ++i) {
    const FormulaPtr body = random_formula(rng, g);
    const Bindings b = draw_bindings(rng, u);
    const Condition c = random_condition(rng, u.extension_pool, 2);
    FormulaPtr axiom;
    switch (i % 4) {
      case 0: {
        const TermPtr t = random_term(rng, {"p"}, g);
        axiom = fm::implies(fm::forall("q", body), substitute_num(body, "q", t));
        break;
      }
      case 1: {
        const TermPtr t = random_term(rng, {"p"}, g);
        axiom = fm::implies(substitute_num(body, "q", t), fm::exists("q", body));
        break;
      }
      case 2: axiom = fm::implies(fm::forallset("W", body), substitute_set(body, "W", fm::svar("X"))); break;
      default: axiom = fm::implies(substitute_set(body, "W", fm::svar("Y")), fm::existsset("W", body)); break;
    }
    // the instance stays closed once q and W are quantified or replaced
    Env env = b.env;
    env.bind_num("q", 0).bind_set("W", EPSet::empty());
    run.run(axiom, u, c, b.text, [&](const FormulaPtr& phi, const Universe& v) -> std::optional<std::string> {
      const TruthValue r = eval_forcing(phi, env, c, v);
      if (!r.value) return "axiom instance not forced: " + show(r);
      return std::nullopt;
    });
  }
  return run.finish();
}

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names = {"monotonicity", "reflection", "uf-axioms",
                                                 "mp",           "dn",         "quantifier"};
  return names;
}

LemmaReport run_lemma(const std::string& name, const HarnessOptions& o, const Universe& u) {
  if (name == "monotonicity") return check_monotonicity(o, u);
  if (name == "reflection") return check_reflection(o, u);
  if (name == "uf-axioms") return check_uf_axioms(o, u);
  if (name == "mp") return check_modus_ponens(o, u);
  if (name == "dn") return check_double_negation(o, u);
  if (name == "quantifier") return check_quantifier_axioms(o, u);
  throw std::invalid_argument("unknown lemma '" + name + "'");
}

std::vector<LemmaReport> check_all(const HarnessOptions& o, const Universe& u) {
  std::vector<LemmaReport> out;
  for (const auto& n : lemma_names()) out.push_back(run_lemma(n, o, u));
  return out;
}

}  // namespace uf
