#ifndef ULTRAFORCE_EPSET_HPP
#define ULTRAFORCE_EPSET_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ultraforce/arith.hpp"

namespace uf {

/// Exact nonnegative rational, always reduced.
struct Rational {
  Nat num = 0;
  Nat den = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(const Rational& r);

/// An eventually periodic subset of the naturals.
///
/// For n >= threshold, n is a member iff residue(n mod period) holds; below the
/// threshold membership is read from an explicit prefix bitmap. Every value is
/// kept in canonical form (minimal period, then minimal threshold), so two
/// EPSets denote the same set iff they compare equal field by field.
class EPSet {
 public:
  /// The empty set.
  EPSet();

  /// Builds and canonicalizes. `residues` are taken mod `period`; `prefix`
  /// entries must be < threshold.
  static EPSet make(Nat threshold, Nat period, const std::vector<Nat>& residues,
                    const std::vector<Nat>& prefix);

  /// Builds from raw bitmaps (residue_bits.size() is the period,
  /// prefix_bits.size() the threshold).
  static EPSet from_bits(std::vector<bool> prefix_bits, std::vector<bool> residue_bits);

  static EPSet empty() { return EPSet(); }
  static EPSet naturals();
  static EPSet multiples(Nat k);
  static EPSet evens() { return multiples(2); }
  static EPSet odds();
  static EPSet finite(const std::vector<Nat>& elems);
  static EPSet cofinite(const std::vector<Nat>& missing);
  /// {n : n >= lo}.
  static EPSet from(Nat lo);
  /// [0, hi).
  static EPSet below(Nat hi);

  Nat threshold() const { return prefix_.size(); }
  Nat period() const { return residues_.size(); }
  const std::vector<bool>& residue_bits() const { return residues_; }
  const std::vector<bool>& prefix_bits() const { return prefix_; }
  std::vector<Nat> residues() const;
  std::vector<Nat> prefix_members() const;

  bool member(Nat n) const;
  bool is_infinite() const;
  bool is_finite() const { return !is_infinite(); }
  bool is_empty() const;
  /// Number of elements; only meaningful for finite sets.
  Nat finite_size() const;
  /// Least element strictly greater than x. Throws std::domain_error on a
  /// finite set.
  Nat least_above(Nat x) const;

  /// Membership in the canonical ultrafilter: 0 is a live residue.
  bool in_canonical_ultrafilter() const;
  /// |residues| / period.
  Rational density() const;

  /// Column t under the pairing convention: {s : pair(t, s) in this}.
  EPSet column(Nat t) const;

  std::string to_string() const;

  friend bool operator==(const EPSet&, const EPSet&) = default;
  friend auto operator<=>(const EPSet& a, const EPSet& b) {
    if (auto c = a.prefix_.size() <=> b.prefix_.size(); c != 0) return c;
    if (auto c = a.residues_.size() <=> b.residues_.size(); c != 0) return c;
    if (a.prefix_ < b.prefix_) return std::strong_ordering::less;
    if (b.prefix_ < a.prefix_) return std::strong_ordering::greater;
    if (a.residues_ < b.residues_) return std::strong_ordering::less;
    if (b.residues_ < a.residues_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const;

 private:
  EPSet(std::vector<bool> prefix, std::vector<bool> residues);
  void canonicalize();

  std::vector<bool> prefix_;    // size == threshold
  std::vector<bool> residues_;  // size == period >= 1
};

std::ostream& operator<<(std::ostream& os, const EPSet& s);

EPSet intersect(const EPSet& a, const EPSet& b);
EPSet unite(const EPSet& a, const EPSet& b);
EPSet complement(const EPSet& a);
EPSet difference(const EPSet& a, const EPSet& b);
bool is_subset(const EPSet& a, const EPSet& b);
/// True iff a \ b is finite.
bool almost_subset(const EPSet& a, const EPSet& b);

/// Largest period any intermediate result may take before an operation
/// refuses with std::length_error.
inline constexpr Nat kMaxPeriod = Nat{1} << 22;

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at offset " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Parses one EPSet literal starting at `pos` (whitespace skipped); advances
/// `pos` past it.
EPSet parse_epset(std::string_view text, std::size_t& pos);
EPSet parse_epset(std::string_view text);

}  // namespace uf

template <>
struct std::hash<uf::EPSet> {
  std::size_t operator()(const uf::EPSet& s) const noexcept { return s.hash(); }
};

#endif  // ULTRAFORCE_EPSET_HPP
