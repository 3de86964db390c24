#ifndef ULTRAFORCE_FORMULA_HPP
#define ULTRAFORCE_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ultraforce/arith.hpp"

namespace uf {

// Number variables start with a lowercase letter, set variables with an
// uppercase one.
bool is_num_var_name(std::string_view name);
bool is_set_var_name(std::string_view name);

struct Term;
struct SetTerm;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using SetTermPtr = std::shared_ptr<const SetTerm>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Term {
  enum class Kind { Var, Lit, Succ, Plus, Times, Pair };
  Kind kind;
  std::string name;  // Var
  Nat value = 0;     // Lit
  TermPtr lhs, rhs;  // Succ uses lhs only
};

struct SetTerm {
  enum class Kind { Var, Sub };
  Kind kind;
  std::string name;  // Var
  SetTermPtr base;   // Sub
  TermPtr index;     // Sub
};

struct Formula {
  enum class Kind {
    In, Eq, Lt, Uf,
    And, Or, Implies, Not,
    Forall, Exists, ForallB, ExistsB, ForallSet, ExistsSet
  };
  Kind kind;
  TermPtr t1, t2;     // In: t1; Eq/Lt: t1, t2; ForallB/ExistsB: t1 is the bound
  SetTermPtr set;     // In, Uf
  FormulaPtr lhs, rhs;  // connectives; quantifier body in lhs
  std::string var;    // quantifiers
};

namespace fm {
TermPtr var(std::string name);
TermPtr lit(Nat v);
TermPtr succ(TermPtr t);
TermPtr plus(TermPtr a, TermPtr b);
TermPtr times(TermPtr a, TermPtr b);
TermPtr pair(TermPtr a, TermPtr b);

SetTermPtr svar(std::string name);
SetTermPtr sub(SetTermPtr base, TermPtr index);

FormulaPtr in(TermPtr t, SetTermPtr s);
FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr lt(TermPtr a, TermPtr b);
FormulaPtr uf(SetTermPtr s);
FormulaPtr land(FormulaPtr a, FormulaPtr b);
FormulaPtr lor(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr lnot(FormulaPtr a);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(std::string x, FormulaPtr body);
FormulaPtr exists(std::string x, FormulaPtr body);
FormulaPtr forallb(std::string x, TermPtr bound, FormulaPtr body);
FormulaPtr existsb(std::string x, TermPtr bound, FormulaPtr body);
FormulaPtr forallset(std::string x, FormulaPtr body);
FormulaPtr existsset(std::string x, FormulaPtr body);

/// The fixed false sentence (succ 0 = 0).
FormulaPtr absurdity();
}  // namespace fm

bool equal(const Term& a, const Term& b);
bool equal(const SetTerm& a, const SetTerm& b);
bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }
/// Equality up to renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

std::string print(const Term& t);
std::string print(const SetTerm& s);
std::string print(const Formula& f);
inline std::string print(const FormulaPtr& f) { return print(*f); }

FormulaPtr parse_formula(std::string_view text);
/// Parses one formula starting at pos, advancing it.
FormulaPtr parse_formula(std::string_view text, std::size_t& pos);
/// One formula per non-blank line; `#` starts a comment.
std::vector<FormulaPtr> parse_formula_file(std::string_view text);
TermPtr parse_term(std::string_view text);

struct FreeVars {
  std::set<std::string> nums;
  std::set<std::string> sets;
};

FreeVars free_vars(const Formula& f);
std::set<std::string> free_vars(const Term& t);
FreeVars free_vars(const SetTerm& s);
/// Every variable name occurring anywhere, bound or free.
std::set<std::string> all_names(const Formula& f);

bool is_uf_free(const Formula& f);
bool is_arithmetic(const Formula& f);
std::size_t depth(const Formula& f);
std::size_t size(const Formula& f);

/// A name built from `stem` not present in `avoid`.
std::string fresh_name(const std::string& stem, const std::set<std::string>& avoid);

/// Capture-avoiding substitution of a number term for a number variable.
FormulaPtr substitute_num(const FormulaPtr& f, const std::string& x, const TermPtr& t);
/// Capture-avoiding substitution of a set term for a set variable.
FormulaPtr substitute_set(const FormulaPtr& f, const std::string& x, const SetTermPtr& t);
TermPtr substitute_num(const TermPtr& t, const std::string& x, const TermPtr& by);
SetTermPtr substitute_num(const SetTermPtr& s, const std::string& x, const TermPtr& by);

/// Rewrites not, or, exists, existsb and existsset away: ¬φ becomes
/// φ → absurdity and the others their De Morgan duals.
FormulaPtr normalize_abbreviations(const FormulaPtr& f);
bool is_normalized(const Formula& f);

}  // namespace uf

#endif  // ULTRAFORCE_FORMULA_HPP
