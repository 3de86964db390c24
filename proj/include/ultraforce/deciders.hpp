#ifndef ULTRAFORCE_DECIDERS_HPP
#define ULTRAFORCE_DECIDERS_HPP

#include <string>
#include <vector>

#include "ultraforce/condition.hpp"
#include "ultraforce/formula.hpp"
#include "ultraforce/semantics.hpp"

namespace uf {

struct DecisionTrace {
  /// sigma[i] is set iff the running intersection stayed infinite with X_i.
  std::vector<bool> sigma;
  Condition result;
  /// The sets that were decided, in order; sigma[i] says which way.
  std::vector<EPSet> decided;
};

struct Settlement {
  Condition v;
  DecisionTrace trace;
};

/// v = interleave(u, [X_i or its complement]) along the sigma chain, so v ⪯ u
/// and v forces X_i ∈ 𝔘 exactly when sigma[i].
Settlement settle_term(const Condition& u, const std::vector<EPSet>& xs);

/// Every set `T(params)` named by a uf atom of φ, for all assignments of
/// the number variables in T below param_bound. Set variables come from env.
std::vector<EPSet> uf_instances(const FormulaPtr& phi, const Env& env, Nat param_bound);

/// settle_term on uf_instances. Throws std::invalid_argument if φ has set
/// quantifiers.
Settlement recursively_decides(const Condition& u, const FormulaPtr& phi, const Env& env, Nat param_bound);

struct Comprehension {
  Condition v;
  /// {n < param_bound : v ⊩ φ(n)}
  std::vector<Nat> table;
  EPSet y;
  DecisionTrace trace;
};

/// Forcing at a condition that already decides every relevant atom needs no
/// extensions, so the universe's pools may be empty.
Comprehension comprehension_witness(const Condition& u, const FormulaPtr& phi, const std::string& n,
                                    const Env& env, Nat param_bound, const Universe& universe = {});

/// (n ∈ Y ↔ φ), the equivalence a comprehension witness must force.
FormulaPtr comprehension_equivalence(const FormulaPtr& phi, const std::string& n, const std::string& y);

/// Least b with parts[0] ∪ ... ∪ parts[b] in 𝔘₀. Throws std::invalid_argument
/// unless the parts are pairwise disjoint and cover ℕ.
std::size_t partition_select(const std::vector<EPSet>& parts);
/// The index of the part that is itself in 𝔘₀.
std::size_t partition_select_direct(const std::vector<EPSet>& parts);
bool is_partition(const std::vector<EPSet>& parts);

struct Stage {
  std::string label;
  /// Y^a = {pair(b, m) : b earlier than a, m ∈ Y_b}, b by position in the order.
  EPSet history;
  std::vector<Nat> table;
  Condition v;
};

struct TransfiniteResult {
  Condition v;
  std::vector<Stage> stages;
};

/// Stage a has V_a deciding θ(n, Y^a) and Y_a = {m < param_bound : V_a ⊩ θ(m, Y^a)}.
/// `order` lists the labels from least to greatest; θ has number variable `n`
/// and reads the history through set variable `hist`.
TransfiniteResult transfinite_force(const Condition& u, const std::vector<std::string>& order,
                                    const FormulaPtr& theta, const std::string& n, const std::string& hist,
                                    const Env& env, Nat param_bound, const Universe& universe = {});

}  // namespace uf

#endif  // ULTRAFORCE_DECIDERS_HPP
