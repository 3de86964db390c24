#ifndef ULTRAFORCE_GENERATORS_HPP
#define ULTRAFORCE_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "ultraforce/condition.hpp"
#include "ultraforce/formula.hpp"

namespace uf {

using Rng = std::mt19937_64;

struct GenOptions {
  std::size_t max_depth = 3;
  bool uf_atoms = true;
  bool unbounded_quantifiers = true;
  bool set_quantifiers = true;
  /// Only and, implies, forall, forallb, forallset and atoms.
  bool normalized = false;
  /// Allow times and pair on variables, and nested subscripts.
  bool full_terms = false;
  /// Free variables the generator may mention; the caller binds them.
  std::vector<std::string> num_vars = {"p"};
  std::vector<std::string> set_vars = {"X", "Y"};
  Nat max_literal = 5;
  /// Relative weights of uf atoms and implications at interior nodes.
  unsigned uf_weight = 3;
  unsigned implies_weight = 3;
};

FormulaPtr random_formula(Rng& rng, const GenOptions& opts);
TermPtr random_term(Rng& rng, const std::vector<std::string>& vars, const GenOptions& opts);

/// Index below n by reduction modulo n, identical on every platform.
std::size_t pick(Rng& rng, std::size_t n);

EPSet random_epset(Rng& rng, Nat max_threshold = 5, Nat max_period = 6);
/// A random condition with at most `max_len` members drawn from `pool`.
Condition random_condition(Rng& rng, const std::vector<EPSet>& pool, std::size_t max_len);

}  // namespace uf

#endif  // ULTRAFORCE_GENERATORS_HPP
