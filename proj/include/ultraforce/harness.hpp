#ifndef ULTRAFORCE_HARNESS_HPP
#define ULTRAFORCE_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ultraforce/semantics.hpp"

namespace uf {

struct Counterexample {
  std::size_t instance = 0;
  /// Shrunk formula; `original` is the sampled one.
  std::string formula;
  std::string original;
  std::string condition;
  std::string env;
  /// The universe after shrinking, in universe-file syntax.
  std::string universe;
  std::string detail;
};

struct LemmaReport {
  std::string lemma;
  std::size_t tried = 0;
  std::vector<Counterexample> failures;
  double seconds = 0;

  bool pass() const { return failures.empty(); }
};

struct HarnessOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t max_depth = 3;
  /// Stop shrinking and sampling a lemma after this many failures.
  std::size_t max_failures = 5;
};

LemmaReport check_monotonicity(const HarnessOptions& o, const Universe& u);
LemmaReport check_reflection(const HarnessOptions& o, const Universe& u);
LemmaReport check_uf_axioms(const HarnessOptions& o, const Universe& u);
LemmaReport check_modus_ponens(const HarnessOptions& o, const Universe& u);
LemmaReport check_double_negation(const HarnessOptions& o, const Universe& u);
LemmaReport check_quantifier_axioms(const HarnessOptions& o, const Universe& u);

/// Lemma names as the CLI spells them, in check_all order.
const std::vector<std::string>& lemma_names();
/// Throws std::invalid_argument on an unknown name.
LemmaReport run_lemma(const std::string& name, const HarnessOptions& o, const Universe& u);
std::vector<LemmaReport> check_all(const HarnessOptions& o, const Universe& u);

/// Greedy shrinking: while some one-node-smaller formula, or a universe with
/// one complementary pair fewer or a smaller extension depth, still fails,
/// take it. `fails` must return false (not throw) on instances it cannot run.
using FailureTest = std::function<bool(const FormulaPtr&, const Universe&)>;
std::pair<FormulaPtr, Universe> shrink(FormulaPtr f, Universe u, const FailureTest& fails);

}  // namespace uf

#endif  // ULTRAFORCE_HARNESS_HPP
