#ifndef ULTRAFORCE_ARITH_HPP
#define ULTRAFORCE_ARITH_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace uf {

using Nat = std::uint64_t;

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

inline Nat checked_add(Nat a, Nat b) {
  Nat r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("natural addition overflow");
  return r;
}

inline Nat checked_mul(Nat a, Nat b) {
  Nat r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("natural multiplication overflow");
  return r;
}

inline Nat lcm(Nat a, Nat b) { return checked_mul(a / std::gcd(a, b), b); }

// Cantor pairing: (a, b) -> (a+b)(a+b+1)/2 + b.
inline Nat cantor_pair(Nat a, Nat b) {
  const Nat s = checked_add(a, b);
  const Nat s1 = checked_add(s, 1);
  const Nat tri = (s % 2 == 0) ? checked_mul(s / 2, s1) : checked_mul(s, s1 / 2);
  return checked_add(tri, b);
}

inline std::pair<Nat, Nat> cantor_unpair(Nat z) {
  // Largest w with w(w+1)/2 <= z.
  Nat w = 0;
  {
    Nat lo = 0, hi = 1;
    while (hi < (Nat{1} << 32) && hi * (hi + 1) / 2 <= z) hi *= 2;
    while (lo < hi) {
      const Nat mid = lo + (hi - lo + 1) / 2;
      if (mid * (mid + 1) / 2 <= z) lo = mid; else hi = mid - 1;
    }
    w = lo;
  }
  const Nat b = z - w * (w + 1) / 2;
  return {w - b, b};
}

}  // namespace uf

#endif  // ULTRAFORCE_ARITH_HPP
