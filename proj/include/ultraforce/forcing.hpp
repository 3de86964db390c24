#ifndef ULTRAFORCE_FORCING_HPP
#define ULTRAFORCE_FORCING_HPP

#include <optional>
#include <set>
#include <string>

#include "ultraforce/formula.hpp"

namespace uf {

/// Name supply for one translation. Names are `stem` followed by a counter
/// that runs across the whole translation, skipping anything in `avoid`.
class TranslationContext {
 public:
  explicit TranslationContext(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}
  std::string fresh(const std::string& stem);

 private:
  std::set<std::string> avoid_;
  unsigned counter_ = 0;
};

/// U ⊩ φ as a 𝔘-free formula whose only new free variable is `cond_var`.
/// Throws std::invalid_argument if `cond_var` is free in φ or is not a set
/// variable name.
FormulaPtr translate(const FormulaPtr& phi, const std::string& cond_var);

/// Every finite subfamily of V has infinite intersection. Finite subsets of
/// the index set are represented by initial segments [0, k), which suffices
/// because intersections only shrink as the index set grows.
FormulaPtr expand_ult(const std::string& v);
FormulaPtr expand_ult(const std::string& v, TranslationContext& ctx);

/// Ult(V) and every column of U contains some column of V.
FormulaPtr expand_preceq(const std::string& v, const std::string& u);
FormulaPtr expand_preceq(const std::string& v, const std::string& u, TranslationContext& ctx);

/// U ⊩ (T ∈ 𝔘): some finite subfamily of U is almost contained in T.
FormulaPtr expand_forces_uf(const std::string& u, const SetTermPtr& t, TranslationContext& ctx);

/// If `guard` is expand_preceq(v, u) up to bound-variable names, returns u.
std::optional<std::string> match_preceq_guard(const Formula& guard, const std::string& v);

}  // namespace uf

#endif  // ULTRAFORCE_FORCING_HPP
