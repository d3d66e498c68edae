#pragma once

#include <vector>

#include "sumfree/interval.hpp"

namespace sumfree {

// Enclosure of pi, hard-coded to 10^-75; the unit tests re-derive it from the
// Machin formula 16*atan(1/5) - 4*atan(1/239) with exact rational tails.
Interval pi_interval();

// Enclosures of cos(2*pi*t) and sin(2*pi*t) for rational t.  Range reduction
// is exact (t mod 1 and the eighth-turn symmetries are rational identities);
// the core series runs on [0, pi/4] where the Taylor terms alternate, so the
// truncation error is bounded by the first omitted term.  Result endpoints
// are dyadic with `bits` fractional bits.
Interval cos2pi(const Rational& t, int bits);
Interval sin2pi(const Rational& t, int bits);

// cos(pi * a / b) = cos2pi(a / 2b).
Interval cos_pi_frac(long long a, long long b, int bits);
Interval sin_pi_frac(long long a, long long b, int bits);

// Table of cos(2*pi*j/q) for j = 0..q-1.
std::vector<Interval> cos_table(long long q, int bits);

}  // namespace sumfree
