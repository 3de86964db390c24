#ifndef ULTRAFORCE_RAMSEY_HPP
#define ULTRAFORCE_RAMSEY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultraforce/epset.hpp"
#include "ultraforce/generators.hpp"

namespace uf {

struct RuleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A 2-coloring c(n, x, y) that depends only on the n-class of n, x mod P,
/// x >= x_threshold, y mod Q and y >= y_threshold. The n-class is n itself
/// below n_cap and n_cap + n mod n_period from there on.
///
/// The colors of a strong-pairs family are c_n(x, y) = c(n, x, y); a triples
/// coloring reads the same rule on n < x < y.
struct ColoringRule {
  Nat n_cap = 0;
  Nat n_period = 1;
  Nat x_period = 1;
  Nat y_period = 1;
  Nat x_threshold = 0;
  Nat y_threshold = 0;
  /// Indexed by cell(); entries are 0 or 1.
  std::vector<std::uint8_t> table;

  using CellFn = std::function<int(Nat n_class, Nat xr, bool x_past, Nat yr, bool y_past)>;
  static ColoringRule build(Nat n_cap, Nat n_period, Nat x_period, Nat y_period, Nat x_threshold,
                            Nat y_threshold, const CellFn& f);
  static ColoringRule constant(int color);

  Nat n_classes() const { return n_cap + n_period; }
  Nat n_class(Nat n) const { return n < n_cap ? n : n_cap + n % n_period; }
  std::size_t cells() const;
  std::size_t cell(Nat n_class, Nat xr, bool x_past, Nat yr, bool y_past) const;
  int color(Nat n, Nat x, Nat y) const;
  bool is_constant() const;
  /// {y : c(n, x, y) = v}, any y.
  EPSet slice(Nat n, Nat x, int v) const;

  /// Throws RuleError on a malformed rule.
  void validate() const;
};

using ColoringFamily = ColoringRule;

/// Keys `n_cap`, `n_period`, `x_period`, `y_period`, `x_threshold`,
/// `y_threshold` (each defaults as in ColoringRule), then `table` followed by
/// the cells as 0/1 digits, possibly over several lines. `#` starts a comment.
ColoringRule parse_rule(std::string_view text);
std::string to_string(const ColoringRule& r);

ColoringRule random_rule(Rng& rng);

struct RamseyWitness {
  bool triples = false;
  std::vector<Nat> h;
  /// verdicts[n] is whether T_n is in 𝔘₀: then c_n(h_i, h_j) = 0 for n <= i < j.
  std::vector<bool> verdicts;
  std::vector<Nat> k;
  /// k[i] is h at position k_index[i] of the underlying h sequence.
  std::vector<Nat> k_index;
  int color = -1;
};

struct RamseyOptions {
  /// Bound on single least_above steps while building h.
  std::size_t step_budget = 2'000'000;
};

RamseyWitness strong_pairs(const ColoringRule& c, std::size_t count, const RamseyOptions& opts = {});
RamseyWitness triples(const ColoringRule& c, std::size_t count, const RamseyOptions& opts = {});
bool verify_witness(const ColoringRule& c, const RamseyWitness& w);

/// The pieces of the strong-pairs construction, exposed for testing.
class StrongPairs {
 public:
  explicit StrongPairs(const ColoringRule& c);

  /// n in S_x.
  bool in_s(Nat n, Nat x);
  /// T_n as an EPSet, built from S_x on a full period.
  EPSet t_set(Nat n);
  /// T_n in 𝔘₀, read off one stage x past every threshold.
  bool verdict(Nat n);
  /// The 𝔘₀ class {y > x : c^x(y) = S_x} without the cut at x.
  const EPSet& selected_class(Nat x);

 private:
  struct Stage {
    std::vector<bool> bits;
    EPSet cls;
  };
  const Stage& stage(Nat x);
  Stage compute(Nat x) const;

  ColoringRule c_;
  Nat full_;
  std::vector<std::optional<Stage>> small_;
  std::vector<std::optional<Stage>> by_type_;
  std::vector<std::optional<bool>> verdicts_;
};

}  // namespace uf

#endif  // ULTRAFORCE_RAMSEY_HPP
