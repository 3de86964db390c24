#include "ultraforce/epset.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "cursor.hpp"

namespace uf {

std::string to_string(const Rational& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

EPSet::EPSet() : prefix_(), residues_(1, false) {}

EPSet::EPSet(std::vector<bool> prefix, std::vector<bool> residues)
    : prefix_(std::move(prefix)), residues_(std::move(residues)) {
  if (residues_.empty()) throw std::invalid_argument("EPSet period must be >= 1");
  if (residues_.size() > kMaxPeriod) throw std::length_error("EPSet period too large");
  canonicalize();
}

EPSet EPSet::from_bits(std::vector<bool> prefix_bits, std::vector<bool> residue_bits) {
  return EPSet(std::move(prefix_bits), std::move(residue_bits));
}

EPSet EPSet::make(Nat threshold, Nat period, const std::vector<Nat>& residues,
                  const std::vector<Nat>& prefix) {
  if (period == 0) throw std::invalid_argument("EPSet period must be >= 1");
  if (period > kMaxPeriod || threshold > kMaxPeriod)
    throw std::length_error("EPSet literal too large");
  std::vector<bool> res(period, false);
  for (Nat r : residues) res[r % period] = true;
  std::vector<bool> pre(threshold, false);
  for (Nat p : prefix) {
    if (p >= threshold) throw std::invalid_argument("prefix entry not below threshold");
    pre[p] = true;
  }
  return EPSet(std::move(pre), std::move(res));
}

EPSet EPSet::naturals() { return EPSet({}, {true}); }

EPSet EPSet::multiples(Nat k) {
  if (k == 0) return finite({0});
  std::vector<bool> res(k, false);
  res[0] = true;
  return EPSet({}, std::move(res));
}

EPSet EPSet::odds() { return EPSet({}, {false, true}); }

EPSet EPSet::finite(const std::vector<Nat>& elems) {
  Nat top = 0;
  for (Nat e : elems) top = std::max(top, e + 1);
  return make(top, 1, {}, elems);
}

EPSet EPSet::cofinite(const std::vector<Nat>& missing) { return complement(finite(missing)); }

EPSet EPSet::from(Nat lo) { return EPSet(std::vector<bool>(lo, false), {true}); }

EPSet EPSet::below(Nat hi) { return EPSet(std::vector<bool>(hi, true), {false}); }

void EPSet::canonicalize() {
  // Minimal period: the smallest divisor d of the period under which the
  // residue pattern repeats.
  const Nat p = residues_.size();
  for (Nat d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (Nat r = d; r < p && ok; ++r) ok = residues_[r] == residues_[r % d];
    if (ok) {
      residues_.resize(d);
      break;
    }
  }
  // Minimal threshold.
  const Nat q = residues_.size();
  while (!prefix_.empty()) {
    const Nat n = prefix_.size() - 1;
    if (prefix_[n] != residues_[n % q]) break;
    prefix_.pop_back();
  }
}

std::vector<Nat> EPSet::residues() const {
  std::vector<Nat> out;
  for (Nat r = 0; r < residues_.size(); ++r)
    if (residues_[r]) out.push_back(r);
  return out;
}

std::vector<Nat> EPSet::prefix_members() const {
  std::vector<Nat> out;
  for (Nat n = 0; n < prefix_.size(); ++n)
    if (prefix_[n]) out.push_back(n);
  return out;
}

bool EPSet::member(Nat n) const {
  if (n < prefix_.size()) return prefix_[n];
  return residues_[n % residues_.size()];
}

bool EPSet::is_infinite() const {
  return std::find(residues_.begin(), residues_.end(), true) != residues_.end();
}

bool EPSet::is_empty() const {
  return !is_infinite() && std::find(prefix_.begin(), prefix_.end(), true) == prefix_.end();
}

Nat EPSet::finite_size() const {
  return static_cast<Nat>(std::count(prefix_.begin(), prefix_.end(), true));
}

Nat EPSet::least_above(Nat x) const {
  if (!is_infinite()) throw std::domain_error("least_above on a finite set");
  Nat n = checked_add(x, 1);
  while (!member(n)) n = checked_add(n, 1);
  return n;
}

bool EPSet::in_canonical_ultrafilter() const { return residues_[0]; }

Rational EPSet::density() const {
  const Nat live = static_cast<Nat>(std::count(residues_.begin(), residues_.end(), true));
  const Nat g = std::gcd(live, static_cast<Nat>(residues_.size()));
  if (live == 0) return {0, 1};
  return {live / g, residues_.size() / g};
}

EPSet EPSet::column(Nat t) const {
  // pair(t, s) is non-decreasing in s and >= s, and its residue mod p repeats
  // with period 2p in s, so the column is eventually periodic from s = threshold.
  const Nat thr = prefix_.size();
  const Nat per = checked_mul(2, residues_.size());
  std::vector<bool> pre(thr);
  for (Nat s = 0; s < thr; ++s) pre[s] = member(cantor_pair(t, s));
  std::vector<bool> res(per);
  for (Nat r = 0; r < per; ++r) {
    Nat s = thr + ((r + per - thr % per) % per);
    res[r] = member(cantor_pair(t, s));
  }
  return EPSet(std::move(pre), std::move(res));
}

namespace {

std::string join(const std::vector<Nat>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

template <class Op>
EPSet combine(const EPSet& a, const EPSet& b, Op op) {
  const Nat thr = std::max(a.threshold(), b.threshold());
  const Nat per = lcm(a.period(), b.period());
  if (per > kMaxPeriod) throw std::length_error("EPSet period too large");
  std::vector<bool> pre(thr);
  for (Nat n = 0; n < thr; ++n) pre[n] = op(a.member(n), b.member(n));
  std::vector<bool> res(per);
  const auto& ra = a.residue_bits();
  const auto& rb = b.residue_bits();
  for (Nat r = 0; r < per; ++r) res[r] = op(ra[r % ra.size()], rb[r % rb.size()]);
  return EPSet::from_bits(std::move(pre), std::move(res));
}

}  // namespace

std::string EPSet::to_string() const {
  return "ep(threshold=" + std::to_string(threshold()) + ", period=" + std::to_string(period()) +
         ", residues={" + join(residues()) + "}, prefix={" + join(prefix_members()) + "})";
}

std::size_t EPSet::hash() const {
  std::size_t h = std::hash<std::vector<bool>>()(prefix_);
  h ^= std::hash<std::vector<bool>>()(residues_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= prefix_.size() * 31 + residues_.size();
  return h;
}

std::ostream& operator<<(std::ostream& os, const EPSet& s) { return os << s.to_string(); }

EPSet intersect(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

EPSet unite(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

EPSet complement(const EPSet& a) {
  auto pre = a.prefix_bits();
  pre.flip();
  auto res = a.residue_bits();
  res.flip();
  return EPSet::from_bits(std::move(pre), std::move(res));
}

EPSet difference(const EPSet& a, const EPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

bool is_subset(const EPSet& a, const EPSet& b) { return difference(a, b).is_empty(); }

bool almost_subset(const EPSet& a, const EPSet& b) { return difference(a, b).is_finite(); }

namespace {

std::vector<Nat> parse_nat_list(detail::Cursor& c) {
  std::vector<Nat> out;
  c.expect('{');
  if (c.try_char('}')) return out;
  do {
    out.push_back(c.number());
  } while (c.try_char(','));
  c.expect('}');
  return out;
}

}  // namespace

EPSet parse_epset(std::string_view text, std::size_t& pos) {
  detail::Cursor c(text, pos);
  const std::string name = c.ident();
  EPSet out;
  if (name == "evens") {
    out = EPSet::evens();
  } else if (name == "odds") {
    out = EPSet::odds();
  } else if (name == "mult") {
    c.expect('(');
    out = EPSet::multiples(c.number());
    c.expect(')');
  } else if (name == "finite" || name == "cofinite") {
    c.expect('(');
    const auto xs = parse_nat_list(c);
    c.expect(')');
    out = name == "finite" ? EPSet::finite(xs) : EPSet::cofinite(xs);
  } else if (name == "ep") {
    Nat threshold = 0;
    Nat period = 1;
    std::vector<Nat> residues, prefix;
    c.expect('(');
    if (!c.try_char(')')) {
      do {
        const std::size_t at = c.pos();
        const std::string key = c.ident();
        c.expect('=');
        if (key == "threshold") threshold = c.number();
        else if (key == "period") period = c.number();
        else if (key == "residues") residues = parse_nat_list(c);
        else if (key == "prefix") prefix = parse_nat_list(c);
        else throw SyntaxError("unknown ep field '" + key + "'", at);
      } while (c.try_char(','));
      c.expect(')');
    }
    try {
      out = EPSet::make(threshold, period, residues, prefix);
    } catch (const std::invalid_argument& e) {
      throw SyntaxError(e.what(), c.pos());
    }
  } else {
    throw SyntaxError("unknown set literal '" + name + "'", pos);
  }
  pos = c.pos();
  return out;
}

EPSet parse_epset(std::string_view text) {
  std::size_t pos = 0;
  EPSet s = parse_epset(text, pos);
  detail::Cursor c(text, pos);
  if (!c.at_end()) c.fail("trailing input after set literal");
  return s;
}

}  // namespace uf
