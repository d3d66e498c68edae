#pragma once

#include <algorithm>

#include "sumfree/rational.hpp"

namespace sumfree {

// Dyadic outward rounding: largest multiple of 2^-bits that is <= r
// (round_down) resp. smallest >= r (round_up).  Keeps denominators from
// compounding across long interval computations.
Rational dyadic_round_down(const Rational& r, int bits);
Rational dyadic_round_up(const Rational& r, int bits);

// Closed rational interval [lo, hi].  All operations return enclosures; the
// `bits` parameter, where present, applies outward dyadic rounding to the
// result endpoints.
struct Interval {
  Rational lo, hi;

  Interval() : lo(0), hi(0) {}
  explicit Interval(const Rational& x) : lo(x), hi(x) {}
  Interval(const Rational& a, const Rational& b) : lo(a), hi(b) {}

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b);
inline Interval operator*(const Rational& c, const Interval& a) {
  return c >= 0 ? Interval{c * a.lo, c * a.hi} : Interval{c * a.hi, c * a.lo};
}
// Division: b must not contain zero.
Interval operator/(const Interval& a, const Interval& b);

Interval rounded(const Interval& x, int bits);

// Enclosure of v^(1/k) for rational v >= 0, endpoints dyadic with `bits`
// fractional bits; width <= 2^-bits.
Interval root_enclosure(const Rational& v, unsigned k, int bits);

}  // namespace sumfree
