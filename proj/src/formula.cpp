#include "ultraforce/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "cursor.hpp"

namespace uf {

bool is_num_var_name(std::string_view name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
}

bool is_set_var_name(std::string_view name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

namespace fm {

namespace {
TermPtr term(Term::Kind k, TermPtr a = nullptr, TermPtr b = nullptr) {
  return std::make_shared<const Term>(Term{k, {}, 0, std::move(a), std::move(b)});
}
FormulaPtr node(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  Formula f{k, nullptr, nullptr, nullptr, std::move(a), std::move(b), {}};
  return std::make_shared<const Formula>(std::move(f));
}
FormulaPtr quant(Formula::Kind k, std::string x, TermPtr bound, FormulaPtr body) {
  Formula f{k, std::move(bound), nullptr, nullptr, std::move(body), nullptr, std::move(x)};
  return std::make_shared<const Formula>(std::move(f));
}
}  // namespace

TermPtr var(std::string name) {
  if (!is_num_var_name(name)) throw std::invalid_argument("not a number variable: " + name);
  return std::make_shared<const Term>(Term{Term::Kind::Var, std::move(name), 0, nullptr, nullptr});
}
TermPtr lit(Nat v) { return std::make_shared<const Term>(Term{Term::Kind::Lit, {}, v, nullptr, nullptr}); }
TermPtr succ(TermPtr t) { return term(Term::Kind::Succ, std::move(t)); }
TermPtr plus(TermPtr a, TermPtr b) { return term(Term::Kind::Plus, std::move(a), std::move(b)); }
TermPtr times(TermPtr a, TermPtr b) { return term(Term::Kind::Times, std::move(a), std::move(b)); }
TermPtr pair(TermPtr a, TermPtr b) { return term(Term::Kind::Pair, std::move(a), std::move(b)); }

SetTermPtr svar(std::string name) {
  if (!is_set_var_name(name)) throw std::invalid_argument("not a set variable: " + name);
  return std::make_shared<const SetTerm>(SetTerm{SetTerm::Kind::Var, std::move(name), nullptr, nullptr});
}
SetTermPtr sub(SetTermPtr base, TermPtr index) {
  return std::make_shared<const SetTerm>(SetTerm{SetTerm::Kind::Sub, {}, std::move(base), std::move(index)});
}

FormulaPtr in(TermPtr t, SetTermPtr s) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::In, std::move(t), nullptr, std::move(s), nullptr, nullptr, {}});
}
FormulaPtr eq(TermPtr a, TermPtr b) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::Eq, std::move(a), std::move(b), nullptr, nullptr, nullptr, {}});
}
FormulaPtr lt(TermPtr a, TermPtr b) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::Lt, std::move(a), std::move(b), nullptr, nullptr, nullptr, {}});
}
FormulaPtr uf(SetTermPtr s) {
  return std::make_shared<const Formula>(
      Formula{Formula::Kind::Uf, nullptr, nullptr, std::move(s), nullptr, nullptr, {}});
}
FormulaPtr land(FormulaPtr a, FormulaPtr b) { return node(Formula::Kind::And, std::move(a), std::move(b)); }
FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return node(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr implies(FormulaPtr a, FormulaPtr b) {
  return node(Formula::Kind::Implies, std::move(a), std::move(b));
}
FormulaPtr lnot(FormulaPtr a) { return node(Formula::Kind::Not, std::move(a), nullptr); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return land(implies(a, b), implies(b, a)); }
FormulaPtr forall(std::string x, FormulaPtr body) {
  return quant(Formula::Kind::Forall, std::move(x), nullptr, std::move(body));
}
FormulaPtr exists(std::string x, FormulaPtr body) {
  return quant(Formula::Kind::Exists, std::move(x), nullptr, std::move(body));
}
FormulaPtr forallb(std::string x, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ForallB, std::move(x), std::move(bound), std::move(body));
}
FormulaPtr existsb(std::string x, TermPtr bound, FormulaPtr body) {
  return quant(Formula::Kind::ExistsB, std::move(x), std::move(bound), std::move(body));
}
FormulaPtr forallset(std::string x, FormulaPtr body) {
  return quant(Formula::Kind::ForallSet, std::move(x), nullptr, std::move(body));
}
FormulaPtr existsset(std::string x, FormulaPtr body) {
  return quant(Formula::Kind::ExistsSet, std::move(x), nullptr, std::move(body));
}

FormulaPtr absurdity() {
  static const FormulaPtr f = eq(succ(lit(0)), lit(0));
  return f;
}

}  // namespace fm

// ---------------------------------------------------------------------------
// Structural equality

bool equal(const Term& a, const Term& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Var: return a.name == b.name;
    case Term::Kind::Lit: return a.value == b.value;
    case Term::Kind::Succ: return equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

bool equal(const SetTerm& a, const SetTerm& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == SetTerm::Kind::Var) return a.name == b.name;
  return equal(*a.base, *b.base) && equal(*a.index, *b.index);
}

namespace {

bool is_quantifier(Formula::Kind k) {
  using K = Formula::Kind;
  return k == K::Forall || k == K::Exists || k == K::ForallB || k == K::ExistsB ||
         k == K::ForallSet || k == K::ExistsSet;
}

bool is_set_quantifier(Formula::Kind k) {
  return k == Formula::Kind::ForallSet || k == Formula::Kind::ExistsSet;
}

}  // namespace

bool equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  using K = Formula::Kind;
  switch (a.kind) {
    case K::In: return equal(*a.t1, *b.t1) && equal(*a.set, *b.set);
    case K::Eq:
    case K::Lt: return equal(*a.t1, *b.t1) && equal(*a.t2, *b.t2);
    case K::Uf: return equal(*a.set, *b.set);
    case K::Not: return equal(*a.lhs, *b.lhs);
    case K::And:
    case K::Or:
    case K::Implies: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
    case K::ForallB:
    case K::ExistsB:
      if (!equal(*a.t1, *b.t1)) return false;
      [[fallthrough]];
    default: return a.var == b.var && equal(*a.lhs, *b.lhs);
  }
}

namespace {

using Renaming = std::map<std::string, std::string>;

std::string lookup(const Renaming& r, const std::string& x) {
  auto it = r.find(x);
  return it == r.end() ? x : it->second;
}

bool alpha_term(const Term& a, const Term& b, const Renaming& ra, const Renaming& rb) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Term::Kind::Var: return lookup(ra, a.name) == lookup(rb, b.name);
    case Term::Kind::Lit: return a.value == b.value;
    case Term::Kind::Succ: return alpha_term(*a.lhs, *b.lhs, ra, rb);
    default: return alpha_term(*a.lhs, *b.lhs, ra, rb) && alpha_term(*a.rhs, *b.rhs, ra, rb);
  }
}

bool alpha_set(const SetTerm& a, const SetTerm& b, const Renaming& ra, const Renaming& rb) {
  if (a.kind != b.kind) return false;
  if (a.kind == SetTerm::Kind::Var) return lookup(ra, a.name) == lookup(rb, b.name);
  return alpha_set(*a.base, *b.base, ra, rb) && alpha_term(*a.index, *b.index, ra, rb);
}

bool alpha_formula(const Formula& a, const Formula& b, Renaming& ra, Renaming& rb, int& counter) {
  if (a.kind != b.kind) return false;
  using K = Formula::Kind;
  switch (a.kind) {
    case K::In: return alpha_term(*a.t1, *b.t1, ra, rb) && alpha_set(*a.set, *b.set, ra, rb);
    case K::Eq:
    case K::Lt: return alpha_term(*a.t1, *b.t1, ra, rb) && alpha_term(*a.t2, *b.t2, ra, rb);
    case K::Uf: return alpha_set(*a.set, *b.set, ra, rb);
    case K::Not: return alpha_formula(*a.lhs, *b.lhs, ra, rb, counter);
    case K::And:
    case K::Or:
    case K::Implies:
      return alpha_formula(*a.lhs, *b.lhs, ra, rb, counter) &&
             alpha_formula(*a.rhs, *b.rhs, ra, rb, counter);
    default: {
      if ((a.kind == K::ForallB || a.kind == K::ExistsB) && !alpha_term(*a.t1, *b.t1, ra, rb))
        return false;
      // Bound names map to a shared placeholder no user name can spell.
      const std::string tag = "#" + std::to_string(counter++);
      Renaming na = ra, nb = rb;
      na[a.var] = tag;
      nb[b.var] = tag;
      return alpha_formula(*a.lhs, *b.lhs, na, nb, counter);
    }
  }
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  Renaming ra, rb;
  int counter = 0;
  return alpha_formula(a, b, ra, rb, counter);
}

// ---------------------------------------------------------------------------
// Printing

std::string print(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return t.name;
    case Term::Kind::Lit: return std::to_string(t.value);
    case Term::Kind::Succ: return "(succ " + print(*t.lhs) + ")";
    case Term::Kind::Plus: return "(+ " + print(*t.lhs) + " " + print(*t.rhs) + ")";
    case Term::Kind::Times: return "(* " + print(*t.lhs) + " " + print(*t.rhs) + ")";
    case Term::Kind::Pair: return "(pair " + print(*t.lhs) + " " + print(*t.rhs) + ")";
  }
  return {};
}

std::string print(const SetTerm& s) {
  if (s.kind == SetTerm::Kind::Var) return s.name;
  return "(sub " + print(*s.base) + " " + print(*s.index) + ")";
}

std::string print(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::In: return "(in " + print(*f.t1) + " " + print(*f.set) + ")";
    case K::Eq: return "(= " + print(*f.t1) + " " + print(*f.t2) + ")";
    case K::Lt: return "(< " + print(*f.t1) + " " + print(*f.t2) + ")";
    case K::Uf: return "(uf " + print(*f.set) + ")";
    case K::And: return "(and " + print(*f.lhs) + " " + print(*f.rhs) + ")";
    case K::Or: return "(or " + print(*f.lhs) + " " + print(*f.rhs) + ")";
    case K::Implies: return "(implies " + print(*f.lhs) + " " + print(*f.rhs) + ")";
    case K::Not: return "(not " + print(*f.lhs) + ")";
    case K::Forall: return "(forall " + f.var + " " + print(*f.lhs) + ")";
    case K::Exists: return "(exists " + f.var + " " + print(*f.lhs) + ")";
    case K::ForallB: return "(forallb " + f.var + " " + print(*f.t1) + " " + print(*f.lhs) + ")";
    case K::ExistsB: return "(existsb " + f.var + " " + print(*f.t1) + " " + print(*f.lhs) + ")";
    case K::ForallSet: return "(forallset " + f.var + " " + print(*f.lhs) + ")";
    case K::ExistsSet: return "(existsset " + f.var + " " + print(*f.lhs) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Cursor;

std::string num_var(Cursor& c) {
  const std::size_t at = c.pos();
  std::string x = c.ident();
  if (!is_num_var_name(x)) throw SyntaxError("expected a number variable, got '" + x + "'", at);
  return x;
}

std::string set_var(Cursor& c) {
  const std::size_t at = c.pos();
  std::string x = c.ident();
  if (!is_set_var_name(x)) throw SyntaxError("expected a set variable, got '" + x + "'", at);
  return x;
}

TermPtr parse_term(Cursor& c) {
  if (c.peek_digit()) return fm::lit(c.number());
  if (!c.try_char('(')) return fm::var(num_var(c));
  const std::size_t at = c.pos();
  const std::string h = c.head();
  TermPtr out;
  if (h == "succ") {
    out = fm::succ(parse_term(c));
  } else if (h == "+" || h == "*" || h == "pair") {
    TermPtr a = parse_term(c);
    TermPtr b = parse_term(c);
    out = h == "+" ? fm::plus(a, b) : h == "*" ? fm::times(a, b) : fm::pair(a, b);
  } else {
    throw SyntaxError("unknown term constructor '" + h + "'", at);
  }
  c.expect(')');
  return out;
}

SetTermPtr parse_set_term(Cursor& c) {
  if (!c.try_char('(')) return fm::svar(set_var(c));
  const std::size_t at = c.pos();
  if (c.head() != "sub") throw SyntaxError("expected 'sub'", at);
  SetTermPtr base = parse_set_term(c);
  TermPtr index = parse_term(c);
  c.expect(')');
  return fm::sub(base, index);
}

FormulaPtr parse_formula(Cursor& c) {
  c.expect('(');
  const std::size_t at = c.pos();
  const std::string h = c.head();
  FormulaPtr out;
  if (h == "in") {
    TermPtr t = parse_term(c);
    out = fm::in(t, parse_set_term(c));
  } else if (h == "=" || h == "<") {
    TermPtr a = parse_term(c);
    TermPtr b = parse_term(c);
    out = h == "=" ? fm::eq(a, b) : fm::lt(a, b);
  } else if (h == "uf") {
    out = fm::uf(parse_set_term(c));
  } else if (h == "and" || h == "or" || h == "implies") {
    FormulaPtr a = parse_formula(c);
    FormulaPtr b = parse_formula(c);
    out = h == "and" ? fm::land(a, b) : h == "or" ? fm::lor(a, b) : fm::implies(a, b);
  } else if (h == "not") {
    out = fm::lnot(parse_formula(c));
  } else if (h == "forall" || h == "exists") {
    std::string x = num_var(c);
    FormulaPtr body = parse_formula(c);
    out = h == "forall" ? fm::forall(x, body) : fm::exists(x, body);
  } else if (h == "forallb" || h == "existsb") {
    std::string x = num_var(c);
    TermPtr bound = parse_term(c);
    FormulaPtr body = parse_formula(c);
    out = h == "forallb" ? fm::forallb(x, bound, body) : fm::existsb(x, bound, body);
  } else if (h == "forallset" || h == "existsset") {
    std::string x = set_var(c);
    FormulaPtr body = parse_formula(c);
    out = h == "forallset" ? fm::forallset(x, body) : fm::existsset(x, body);
  } else {
    throw SyntaxError("unknown formula constructor '" + h + "'", at);
  }
  c.expect(')');
  return out;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, std::size_t& pos) {
  Cursor c(text, pos);
  FormulaPtr f = parse_formula(c);
  pos = c.pos();
  return f;
}

FormulaPtr parse_formula(std::string_view text) {
  Cursor c(text);
  FormulaPtr f = parse_formula(c);
  if (!c.at_end()) c.fail("trailing input after formula");
  return f;
}

TermPtr parse_term(std::string_view text) {
  Cursor c(text);
  TermPtr t = parse_term(c);
  if (!c.at_end()) c.fail("trailing input after term");
  return t;
}

std::vector<FormulaPtr> parse_formula_file(std::string_view text) {
  std::vector<FormulaPtr> out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    Cursor probe(line);
    if (!probe.at_end()) {
      try {
        out.push_back(parse_formula(line));
      } catch (const SyntaxError& e) {
        throw SyntaxError(std::string("line ") + std::to_string(out.size() + 1) + ": " + e.what(),
                          line_start + e.position);
      }
    }
    line_start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variables

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  switch (t.kind) {
    case Term::Kind::Var: out.insert(t.name); break;
    case Term::Kind::Lit: break;
    case Term::Kind::Succ: out = free_vars(*t.lhs); break;
    default: {
      out = free_vars(*t.lhs);
      auto r = free_vars(*t.rhs);
      out.insert(r.begin(), r.end());
    }
  }
  return out;
}

FreeVars free_vars(const SetTerm& s) {
  if (s.kind == SetTerm::Kind::Var) return {{}, {s.name}};
  FreeVars out = free_vars(*s.base);
  auto idx = free_vars(*s.index);
  out.nums.insert(idx.begin(), idx.end());
  return out;
}

namespace {

void merge(FreeVars& into, const FreeVars& from) {
  into.nums.insert(from.nums.begin(), from.nums.end());
  into.sets.insert(from.sets.begin(), from.sets.end());
}

}  // namespace

FreeVars free_vars(const Formula& f) {
  using K = Formula::Kind;
  FreeVars out;
  switch (f.kind) {
    case K::In:
      out.nums = free_vars(*f.t1);
      merge(out, free_vars(*f.set));
      break;
    case K::Eq:
    case K::Lt:
      out.nums = free_vars(*f.t1);
      out.nums.merge(free_vars(*f.t2));
      break;
    case K::Uf: out = free_vars(*f.set); break;
    case K::Not: out = free_vars(*f.lhs); break;
    case K::And:
    case K::Or:
    case K::Implies:
      out = free_vars(*f.lhs);
      merge(out, free_vars(*f.rhs));
      break;
    default:
      out = free_vars(*f.lhs);
      if (is_set_quantifier(f.kind)) out.sets.erase(f.var);
      else out.nums.erase(f.var);
      if (f.t1) out.nums.merge(free_vars(*f.t1));
  }
  return out;
}

std::set<std::string> all_names(const Formula& f) {
  FreeVars fv = free_vars(f);
  std::set<std::string> out = fv.nums;
  out.insert(fv.sets.begin(), fv.sets.end());
  if (is_quantifier(f.kind)) out.insert(f.var);
  if (f.lhs) out.merge(all_names(*f.lhs));
  if (f.rhs) out.merge(all_names(*f.rhs));
  return out;
}

bool is_uf_free(const Formula& f) {
  if (f.kind == Formula::Kind::Uf) return false;
  return (!f.lhs || is_uf_free(*f.lhs)) && (!f.rhs || is_uf_free(*f.rhs));
}

bool is_arithmetic(const Formula& f) {
  if (is_set_quantifier(f.kind)) return false;
  return (!f.lhs || is_arithmetic(*f.lhs)) && (!f.rhs || is_arithmetic(*f.rhs));
}

std::size_t depth(const Formula& f) {
  std::size_t d = 0;
  if (f.lhs) d = std::max(d, depth(*f.lhs));
  if (f.rhs) d = std::max(d, depth(*f.rhs));
  return (f.lhs ? 1 : 0) + d;
}

std::size_t size(const Formula& f) {
  return 1 + (f.lhs ? size(*f.lhs) : 0) + (f.rhs ? size(*f.rhs) : 0);
}

std::string fresh_name(const std::string& stem, const std::set<std::string>& avoid) {
  if (!avoid.count(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    std::string cand = stem + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Substitution

TermPtr substitute_num(const TermPtr& t, const std::string& x, const TermPtr& by) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == x ? by : t;
    case Term::Kind::Lit: return t;
    case Term::Kind::Succ: return fm::succ(substitute_num(t->lhs, x, by));
    case Term::Kind::Plus: return fm::plus(substitute_num(t->lhs, x, by), substitute_num(t->rhs, x, by));
    case Term::Kind::Times: return fm::times(substitute_num(t->lhs, x, by), substitute_num(t->rhs, x, by));
    case Term::Kind::Pair: return fm::pair(substitute_num(t->lhs, x, by), substitute_num(t->rhs, x, by));
  }
  return t;
}

SetTermPtr substitute_num(const SetTermPtr& s, const std::string& x, const TermPtr& by) {
  if (s->kind == SetTerm::Kind::Var) return s;
  return fm::sub(substitute_num(s->base, x, by), substitute_num(s->index, x, by));
}

namespace {

SetTermPtr substitute_set_term(const SetTermPtr& s, const std::string& x, const SetTermPtr& by) {
  if (s->kind == SetTerm::Kind::Var) return s->name == x ? by : s;
  return fm::sub(substitute_set_term(s->base, x, by), s->index);
}

FormulaPtr with_children(const Formula& f, FormulaPtr lhs, FormulaPtr rhs) {
  Formula g = f;
  g.lhs = std::move(lhs);
  g.rhs = std::move(rhs);
  return std::make_shared<const Formula>(std::move(g));
}

// Capture-avoiding walk; `replacement_free` holds the free names of the
// replacement, which bound variables must not capture.
struct Substituter {
  std::string x;
  bool set_sort;
  TermPtr num_by;
  SetTermPtr set_by;
  std::set<std::string> replacement_free;

  FormulaPtr atom(const FormulaPtr& f) const {
    Formula g = *f;
    if (set_sort) {
      if (g.set) g.set = substitute_set_term(g.set, x, set_by);
    } else {
      if (g.t1) g.t1 = substitute_num(g.t1, x, num_by);
      if (g.t2) g.t2 = substitute_num(g.t2, x, num_by);
      if (g.set) g.set = substitute_num(g.set, x, num_by);
    }
    return std::make_shared<const Formula>(std::move(g));
  }

  FormulaPtr run(const FormulaPtr& f) const {
    using K = Formula::Kind;
    const FreeVars fv = free_vars(*f);
    if (!(set_sort ? fv.sets.count(x) : fv.nums.count(x))) return f;
    switch (f->kind) {
      case K::In:
      case K::Eq:
      case K::Lt:
      case K::Uf: return atom(f);
      case K::Not: return with_children(*f, run(f->lhs), nullptr);
      case K::And:
      case K::Or:
      case K::Implies: return with_children(*f, run(f->lhs), run(f->rhs));
      default: break;
    }
    // Quantifier whose body mentions x freely (and the bound variable is not x).
    Formula g = *f;
    if (g.t1 && !set_sort) g.t1 = substitute_num(g.t1, x, num_by);
    const bool binds_set = is_set_quantifier(f->kind);
    if (binds_set == set_sort && f->var == x) return std::make_shared<const Formula>(std::move(g));
    FormulaPtr body = f->lhs;
    if (replacement_free.count(f->var)) {
      std::set<std::string> avoid = all_names(*f);
      avoid.insert(replacement_free.begin(), replacement_free.end());
      avoid.insert(x);
      const std::string fresh = fresh_name(f->var, avoid);
      body = binds_set ? substitute_set(body, f->var, fm::svar(fresh))
                       : substitute_num(body, f->var, fm::var(fresh));
      g.var = fresh;
    }
    g.lhs = run(body);
    return std::make_shared<const Formula>(std::move(g));
  }
};

}  // namespace

FormulaPtr substitute_num(const FormulaPtr& f, const std::string& x, const TermPtr& t) {
  Substituter s{x, false, t, nullptr, free_vars(*t)};
  return s.run(f);
}

FormulaPtr substitute_set(const FormulaPtr& f, const std::string& x, const SetTermPtr& t) {
  FreeVars fv = free_vars(*t);
  std::set<std::string> names = fv.sets;
  names.insert(fv.nums.begin(), fv.nums.end());
  Substituter s{x, true, nullptr, t, names};
  return s.run(f);
}

// ---------------------------------------------------------------------------
// Normalization

FormulaPtr normalize_abbreviations(const FormulaPtr& f) {
  using K = Formula::Kind;
  auto neg = [](FormulaPtr a) { return fm::implies(std::move(a), fm::absurdity()); };
  switch (f->kind) {
    case K::In:
    case K::Eq:
    case K::Lt:
    case K::Uf: return f;
    case K::And: return fm::land(normalize_abbreviations(f->lhs), normalize_abbreviations(f->rhs));
    case K::Implies:
      return fm::implies(normalize_abbreviations(f->lhs), normalize_abbreviations(f->rhs));
    case K::Not: return neg(normalize_abbreviations(f->lhs));
    case K::Or: {
      // a ∨ b  ==  ¬(¬a ∧ ¬b)
      auto a = normalize_abbreviations(f->lhs);
      auto b = normalize_abbreviations(f->rhs);
      return neg(fm::land(neg(a), neg(b)));
    }
    case K::Forall: return fm::forall(f->var, normalize_abbreviations(f->lhs));
    case K::ForallB: return fm::forallb(f->var, f->t1, normalize_abbreviations(f->lhs));
    case K::ForallSet: return fm::forallset(f->var, normalize_abbreviations(f->lhs));
    case K::Exists: return neg(fm::forall(f->var, neg(normalize_abbreviations(f->lhs))));
    case K::ExistsB: return neg(fm::forallb(f->var, f->t1, neg(normalize_abbreviations(f->lhs))));
    case K::ExistsSet: return neg(fm::forallset(f->var, neg(normalize_abbreviations(f->lhs))));
  }
  return f;
}

bool is_normalized(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind == K::Not || f.kind == K::Or || f.kind == K::Exists || f.kind == K::ExistsB ||
      f.kind == K::ExistsSet)
    return false;
  return (!f.lhs || is_normalized(*f.lhs)) && (!f.rhs || is_normalized(*f.rhs));
}

}  // namespace uf
