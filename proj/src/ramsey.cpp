#include "ultraforce/ramsey.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ultraforce/deciders.hpp"
#include "ultraforce/semantics.hpp"

namespace uf {

namespace {

constexpr Nat kMaxRuleParam = 64;
constexpr Nat kMaxRuleThreshold = 1024;

}  // namespace

ColoringRule ColoringRule::build(Nat n_cap, Nat n_period, Nat x_period, Nat y_period, Nat x_threshold,
                                 Nat y_threshold, const CellFn& f) {
  ColoringRule r;
  r.n_cap = n_cap;
  r.n_period = n_period;
  r.x_period = x_period;
  r.y_period = y_period;
  r.x_threshold = x_threshold;
  r.y_threshold = y_threshold;
  if (n_period == 0 || x_period == 0 || y_period == 0) throw RuleError("rule periods must be >= 1");
  for (Nat m = 0; m < r.n_classes(); ++m)
    for (Nat xr = 0; xr < x_period; ++xr)
      for (int xa = 0; xa < 2; ++xa)
        for (Nat yr = 0; yr < y_period; ++yr)
          for (int ya = 0; ya < 2; ++ya) r.table.push_back(static_cast<std::uint8_t>(f(m, xr, xa, yr, ya)));
  r.validate();
  return r;
}

ColoringRule ColoringRule::constant(int color) {
  return build(0, 1, 1, 1, 0, 0, [color](Nat, Nat, bool, Nat, bool) { return color; });
}

std::size_t ColoringRule::cells() const { return n_classes() * x_period * 2 * y_period * 2; }

std::size_t ColoringRule::cell(Nat m, Nat xr, bool xa, Nat yr, bool ya) const {
  return (((m * x_period + xr) * 2 + xa) * y_period + yr) * 2 + ya;
}

int ColoringRule::color(Nat n, Nat x, Nat y) const {
  return table[cell(n_class(n), x % x_period, x >= x_threshold, y % y_period, y >= y_threshold)];
}

bool ColoringRule::is_constant() const {
  return std::all_of(table.begin(), table.end(), [&](std::uint8_t v) { return v == table.front(); });
}

EPSet ColoringRule::slice(Nat n, Nat x, int v) const {
  std::vector<bool> pre(y_threshold), res(y_period);
  for (Nat y = 0; y < y_threshold; ++y) pre[y] = color(n, x, y) == v;
  for (Nat r = 0; r < y_period; ++r) {
    const Nat y = y_threshold + (r + y_period - y_threshold % y_period) % y_period;
    res[r] = color(n, x, y) == v;
  }
  return EPSet::from_bits(std::move(pre), std::move(res));
}

void ColoringRule::validate() const {
  if (n_period == 0 || x_period == 0 || y_period == 0) throw RuleError("rule periods must be >= 1");
  if (n_period > kMaxRuleParam || x_period > kMaxRuleParam || y_period > kMaxRuleParam || n_cap > kMaxRuleParam)
    throw RuleError("rule periods and n_cap are limited to " + std::to_string(kMaxRuleParam));
  if (x_threshold > kMaxRuleThreshold || y_threshold > kMaxRuleThreshold)
    throw RuleError("rule thresholds are limited to " + std::to_string(kMaxRuleThreshold));
  if (table.size() != cells())
    throw RuleError("rule table has " + std::to_string(table.size()) + " cells, expected " +
                    std::to_string(cells()));
  for (auto v : table)
    if (v > 1) throw RuleError("rule colors must be 0 or 1");
}

ColoringRule parse_rule(std::string_view text) {
  ColoringRule r;
  r.table.clear();
  bool in_table = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    while (ls >> word) {
      if (in_table) {
        for (char ch : word) {
          if (ch != '0' && ch != '1')
            throw RuleError("line " + std::to_string(lineno) + ": table cells must be 0 or 1");
          r.table.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        continue;
      }
      if (word == "table") {
        in_table = true;
        continue;
      }
      Nat* field = word == "n_cap"         ? &r.n_cap
                   : word == "n_period"    ? &r.n_period
                   : word == "x_period"    ? &r.x_period
                   : word == "y_period"    ? &r.y_period
                   : word == "x_threshold" ? &r.x_threshold
                   : word == "y_threshold" ? &r.y_threshold
                                           : nullptr;
      if (!field) throw RuleError("line " + std::to_string(lineno) + ": unknown key '" + word + "'");
      std::string value;
      if (!(ls >> value) || value.find_first_not_of("0123456789") != std::string::npos || value.size() > 6)
        throw RuleError("line " + std::to_string(lineno) + ": '" + word + "' needs a natural");
      *field = std::stoull(value);
    }
  }
  if (!in_table) throw RuleError("rule has no table");
  r.validate();
  return r;
}

std::string to_string(const ColoringRule& r) {
  std::ostringstream os;
  os << "n_cap " << r.n_cap << "\nn_period " << r.n_period << "\nx_period " << r.x_period << "\ny_period "
     << r.y_period << "\nx_threshold " << r.x_threshold << "\ny_threshold " << r.y_threshold << "\n";
  os << "# one row per (n class, x mod P, x past threshold); cells run over (y mod Q, y past threshold)\n";
  os << "table\n";
  const std::size_t row = 2 * r.y_period;
  for (std::size_t i = 0; i < r.table.size(); ++i) {
    os << static_cast<int>(r.table[i]);
    if ((i + 1) % row == 0) os << "\n";
  }
  return os.str();
}

ColoringRule random_rule(Rng& rng) {
  const Nat n_cap = pick(rng, 3), n_period = pick(rng, 2) + 1;
  const Nat p = pick(rng, 3) + 1, q = pick(rng, 3) + 1;
  const Nat xt = pick(rng, 4), yt = pick(rng, 4);
  return ColoringRule::build(n_cap, n_period, p, q, xt, yt,
                             [&](Nat, Nat, bool, Nat, bool) { return static_cast<int>(pick(rng, 2)); });
}

StrongPairs::StrongPairs(const ColoringRule& c)
    : c_(c), full_(c.n_cap + c.n_period - 1), small_(full_), by_type_(2 * c.x_period) {
  c_.validate();
}

StrongPairs::Stage StrongPairs::compute(Nat x) const {
  const Nat q = c_.y_period, yt = c_.y_threshold;
  std::vector<bool> realized(c_.n_classes());
  for (Nat n = 0; n <= std::min(x, full_); ++n) realized[c_.n_class(n)] = true;

  // Group the y-types by c^x(y), as the bit vector over realized n classes.
  std::map<std::vector<bool>, EPSet> classes;
  std::vector<std::vector<bool>> order;
  for (Nat yr = 0; yr < q; ++yr)
    for (int ya = 0; ya < 2; ++ya) {
      EPSet type = EPSet::empty();
      if (ya) {
        type = EPSet::make(yt, q, {yr}, {});
      } else {
        std::vector<Nat> pre;
        for (Nat y = yr; y < yt; y += q) pre.push_back(y);
        if (pre.empty()) continue;
        type = EPSet::make(yt, 1, {}, pre);
      }
      std::vector<bool> bits(c_.n_classes());
      for (Nat m = 0; m < bits.size(); ++m)
        bits[m] = realized[m] && c_.table[c_.cell(m, x % c_.x_period, x >= c_.x_threshold, yr, ya)] == 0;
      auto [it, fresh] = classes.try_emplace(bits, EPSet::empty());
      if (fresh) order.push_back(bits);
      it->second = unite(it->second, type);
    }

  std::vector<EPSet> parts{EPSet::below(checked_add(x, 1))};
  const EPSet cut = EPSet::from(checked_add(x, 1));
  for (const auto& b : order) parts.push_back(intersect(classes.at(b), cut));
  const std::size_t chosen = partition_select(parts);
  if (chosen == 0) throw std::logic_error("strong_pairs: a finite class was selected");
  const auto& bits = order[chosen - 1];
  return Stage{bits, classes.at(bits)};
}

const StrongPairs::Stage& StrongPairs::stage(Nat x) {
  auto& slot = x < full_ ? small_[x] : by_type_[(x % c_.x_period) * 2 + (x >= c_.x_threshold)];
  if (!slot) slot = compute(x);
  return *slot;
}

bool StrongPairs::in_s(Nat n, Nat x) { return n <= x && stage(x).bits[c_.n_class(n)]; }

const EPSet& StrongPairs::selected_class(Nat x) { return stage(x).cls; }

bool StrongPairs::verdict(Nat n) {
  if (n >= verdicts_.size()) verdicts_.resize(n + 1);
  if (!verdicts_[n]) {
    // a multiple of P past every threshold shares its x mod P with residue 0
    const Nat p = c_.x_period;
    const Nat lo = std::max({c_.x_threshold, n, full_});
    verdicts_[n] = in_s(n, (lo + p - 1) / p * p);
  }
  return *verdicts_[n];
}

EPSet StrongPairs::t_set(Nat n) {
  const Nat p = c_.x_period;
  const Nat lo = std::max({c_.x_threshold, n, full_});
  std::vector<bool> pre(lo), res(p);
  for (Nat x = 0; x < lo; ++x) pre[x] = in_s(n, x);
  for (Nat r = 0; r < p; ++r) res[r] = in_s(n, lo + (r + p - lo % p) % p);
  return EPSet::from_bits(std::move(pre), std::move(res));
}

namespace {

// h_0 < h_1 < ..., each the least element above its predecessor of the
// intersection R of every 𝔘₀ set required so far: the selected class of each
// earlier h_i, T_n or its complement for n <= j, and an optional extra set.
class HSequence {
 public:
  HSequence(StrongPairs& sp, const ColoringRule& c, const EPSet& extra, std::size_t budget)
      : sp_(sp), c_(c), full_(c.n_cap + c.n_period - 1), r_(extra), budget_(budget) {}

  Nat at(std::size_t index) {
    while (!stable_ && values_.size() <= index) step();
    if (index < values_.size()) return values_[index];
    const Nat d = index - (values_.size() - 1);
    const Nat whole = (d - 1) / cycle_.size();
    return checked_add(cycle_[(d - 1) % cycle_.size()], checked_mul(whole, period_));
  }

 private:
  bool require(const EPSet& s) {
    EPSet next = intersect(r_, s);
    if (next == r_) return false;
    if (!next.in_canonical_ultrafilter()) throw std::logic_error("strong_pairs: requirement left 𝔘₀");
    r_ = std::move(next);
    run_start_.reset();
    return true;
  }

  void step() {
    if (values_.size() >= budget_) throw ResourceError("ramsey step budget exceeded");
    const Nat j = values_.size();
    for (; t_added_ <= std::min<Nat>(j, full_); ++t_added_) {
      const EPSet t = sp_.t_set(t_added_);
      require(sp_.verdict(t_added_) ? t : complement(t));
    }
    const Nat h = j == 0 ? (r_.member(0) ? 0 : r_.least_above(0)) : r_.least_above(values_.back());
    values_.push_back(h);
    // below full_ the selected class depends on x itself, past it on x's type
    const Nat key = h < full_ ? h : full_ + (h % c_.x_period) * 2 + (h >= c_.x_threshold);
    if (applied_.insert(key).second && require(sp_.selected_class(h))) return;
    if (!run_start_) {
      run_start_ = h;
      return;
    }
    // Once one full period of R past every threshold passed without R
    // changing, no later h has a new type, so R is final.
    const Nat period = lcm(r_.period(), c_.x_period);
    const Nat lo = std::max({r_.threshold(), c_.x_threshold, full_});
    if (j >= full_ && *run_start_ >= lo && h - *run_start_ >= period) {
      stable_ = true;
      period_ = period;
      for (Nat y = r_.least_above(h); y <= h + period; y = r_.least_above(y)) cycle_.push_back(y);
    }
  }

  StrongPairs& sp_;
  const ColoringRule& c_;
  Nat full_;
  EPSet r_;
  std::size_t budget_;
  std::vector<Nat> values_;
  Nat t_added_ = 0;
  std::set<Nat> applied_;
  std::optional<Nat> run_start_;
  bool stable_ = false;
  Nat period_ = 0;
  std::vector<Nat> cycle_;
};

}  // namespace

RamseyWitness strong_pairs(const ColoringRule& c, std::size_t count, const RamseyOptions& opts) {
  StrongPairs sp(c);
  HSequence hs(sp, c, EPSet::naturals(), opts.step_budget);
  RamseyWitness w;
  for (std::size_t i = 0; i < count; ++i) {
    w.h.push_back(hs.at(i));
    const bool v = sp.verdict(i);
    if (sp.t_set(i).in_canonical_ultrafilter() != v)
      throw std::logic_error("strong_pairs: lazy and materialized verdicts disagree at n=" + std::to_string(i));
    w.verdicts.push_back(v);
  }
  return w;
}

RamseyWitness triples(const ColoringRule& c, std::size_t count, const RamseyOptions& opts) {
  StrongPairs sp(c);
  // D = {n : T_n in 𝔘₀}, where c(n, x, y) = 0 on the strong pairs; it follows
  // the n-class of n, so it is an EPSet of period n_period past n_cap.
  const Nat np = c.n_period;
  std::vector<bool> pre(c.n_cap), res(np);
  for (Nat n = 0; n < c.n_cap; ++n) pre[n] = sp.verdict(n);
  for (Nat r = 0; r < np; ++r) res[r] = sp.verdict(c.n_cap + (r + np - c.n_cap % np) % np);
  const EPSet zero = EPSet::from_bits(std::move(pre), std::move(res));
  const std::vector<EPSet> parts{zero, complement(zero)};
  const std::size_t color = partition_select(parts);

  HSequence hs(sp, c, parts[color], opts.step_budget);
  RamseyWitness w;
  w.triples = true;
  w.color = static_cast<int>(color);
  Nat index = 0;
  for (std::size_t i = 0; i < count; ++i) {
    w.k_index.push_back(index);
    w.k.push_back(hs.at(index));
    index = checked_add(w.k.back(), 1);
  }
  return w;
}

bool verify_witness(const ColoringRule& c, const RamseyWitness& w) {
  const auto increasing = [](const std::vector<Nat>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (!w.triples) {
    if (!increasing(w.h) || w.verdicts.size() != w.h.size()) return false;
    for (std::size_t i = 0; i < w.h.size(); ++i)
      for (std::size_t j = i + 1; j < w.h.size(); ++j)
        for (std::size_t n = 0; n <= i; ++n)
          if (c.color(n, w.h[i], w.h[j]) != (w.verdicts[n] ? 0 : 1)) return false;
    return true;
  }
  if (!increasing(w.k)) return false;
  if (!w.k_index.empty()) {
    if (w.k_index.size() != w.k.size() || w.k_index[0] != 0) return false;
    for (std::size_t i = 0; i + 1 < w.k.size(); ++i)
      if (w.k_index[i + 1] != w.k[i] + 1) return false;
  }
  if (w.k.size() >= 3 && w.color != 0 && w.color != 1) return false;
  for (std::size_t a = 0; a < w.k.size(); ++a)
    for (std::size_t b = a + 1; b < w.k.size(); ++b)
      for (std::size_t d = b + 1; d < w.k.size(); ++d)
        if (c.color(w.k[a], w.k[b], w.k[d]) != w.color) return false;
  return true;
}

}  // namespace uf
