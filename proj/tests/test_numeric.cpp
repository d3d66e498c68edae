#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sumfree/interval.hpp"
#include "sumfree/trig.hpp"

using namespace sumfree;

TEST_CASE("rational parsing") {
  CHECK(parse_rational("0.512") == Rational(512, 1000));
  CHECK(parse_rational("-3/7") == Rational(-3, 7));
  CHECK(parse_rational("12") == Rational(12));
  CHECK(parse_rational("4/3") == Rational(4, 3));
  CHECK(parse_rational("-12.25") == Rational(-49, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("1.0746") == Rational(10746, 10000));
  CHECK_THROWS_AS(parse_rational("1.2/3"), sf_error);
  CHECK_THROWS_AS(parse_rational(""), sf_error);
  CHECK_THROWS_AS(parse_rational("x"), sf_error);
  CHECK_THROWS_AS(parse_rational("1/0"), sf_error);
}

TEST_CASE("decimal rendering truncates exactly") {
  CHECK(decimal_string(Rational(1, 3), 6) == "0.333333");
  CHECK(decimal_string(Rational(-1, 3), 6) == "-0.333333");
  CHECK(decimal_string(Rational(55, 7), 4) == "7.8571");
  CHECK(decimal_string(Rational(2), 2) == "2.00");
}

TEST_CASE("floor, ceil, roots") {
  CHECK(rational_floor(Rational(7, 2)) == 3);
  CHECK(rational_floor(Rational(-7, 2)) == -4);
  CHECK(rational_ceil(Rational(7, 2)) == 4);
  CHECK(isqrt(Int(99)) == 9);
  CHECK(isqrt(Int(100)) == 10);
  CHECK(iroot(Int(26), 3) == 2);
  CHECK(iroot(Int(27), 3) == 3);
  CHECK(iroot(Int("1000000000000000000000000000000"), 5) == 1000000);
  for (int v = 0; v < 200; ++v)
    for (unsigned k = 1; k <= 6; ++k) {
      Int r = iroot(Int(v), k);
      CHECK(boost::multiprecision::pow(r, k) <= v);
      CHECK(boost::multiprecision::pow(r + 1, k) > v);
    }
}

TEST_CASE("dyadic rounding is outward") {
  Rational x(1, 3);
  CHECK(dyadic_round_down(x, 8) == Rational(85, 256));
  CHECK(dyadic_round_up(x, 8) == Rational(86, 256));
  CHECK(dyadic_round_down(-x, 8) == Rational(-86, 256));
  CHECK(dyadic_round_up(Rational(1, 4), 8) == Rational(1, 4));
  CHECK(dyadic_round_down(Rational(1, 4), 8) == Rational(1, 4));
}

TEST_CASE("interval arithmetic encloses") {
  Interval a(Rational(1, 3), Rational(1, 2)), b(Rational(-2), Rational(3));
  Interval p = a * b;
  CHECK(p.lo == Rational(-1));
  CHECK(p.hi == Rational(3, 2));
  Interval q = a / Interval(Rational(2), Rational(4));
  CHECK(q.lo == Rational(1, 12));
  CHECK(q.hi == Rational(1, 4));
  CHECK_THROWS_AS(a / b, sf_error);
}

TEST_CASE("root enclosure") {
  Interval r = root_enclosure(Rational(2), 2, 64);
  CHECK(r.width() <= pow2(-64));
  CHECK(r.lo * r.lo <= Rational(2));
  CHECK(r.hi * r.hi >= Rational(2));
  // exact cases collapse to a point
  Interval e = root_enclosure(Rational(27, 8), 3, 16);
  CHECK(e.lo == e.hi);
  CHECK(e.lo == Rational(3, 2));
  Interval one = root_enclosure(Rational(1), 5, 16);
  CHECK(one.lo == 1);
  CHECK(one.hi == 1);
  Interval z = root_enclosure(Rational(0), 5, 16);
  CHECK(z.lo == 0);
  CHECK(z.hi == 0);
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239), with exact rational alternating
// tails, independently re-deriving the hard-coded bracket.
static void atan_bounds(const Rational& x, int terms, Rational& lo, Rational& hi) {
  Rational sum = 0, power = x;
  Rational x2 = x * x;
  lo = hi = 0;
  for (int i = 0; i < terms; ++i) {
    Rational term = power / (2 * i + 1);
    if (i % 2 == 0)
      sum += term;
    else
      sum -= term;
    power *= x2;
    if (i == terms - 2) lo = sum;  // series alternates: consecutive sums bracket
    if (i == terms - 1) hi = sum;
  }
  if (lo > hi) std::swap(lo, hi);
}

TEST_CASE("pi bracket agrees with Machin formula") {
  Rational lo5, hi5, lo239, hi239;
  atan_bounds(Rational(1, 5), 60, lo5, hi5);
  atan_bounds(Rational(1, 239), 40, lo239, hi239);
  Rational pi_lo = 16 * lo5 - 4 * hi239;
  Rational pi_hi = 16 * hi5 - 4 * lo239;
  Interval pi = pi_interval();
  // the Machin bracket at these depths is far tighter than 10^-75, so it must
  // sit inside the hard-coded bracket — this validates every stored digit
  CHECK(pi.lo <= pi_lo);
  CHECK(pi_hi <= pi.hi);
  CHECK(pi.hi - pi.lo <= Rational(1, boost::multiprecision::pow(Int(10), 74)));
}

TEST_CASE("cosine enclosures at rational angles") {
  struct Case {
    long long num, den;
    double expect;
  };
  // cos(2*pi*num/den)
  std::vector<Case> cases = {
      {0, 1, 1.0},          {1, 2, -1.0},         {1, 4, 0.0},
      {1, 3, -0.5},         {1, 6, 0.5},          {1, 8, std::sqrt(0.5)},
      {3, 8, -std::sqrt(0.5)}, {1, 12, std::sqrt(3.0) / 2},
      {5, 7, std::cos(2 * M_PI * 5 / 7)},          {13, 73, std::cos(2 * M_PI * 13 / 73)},
  };
  for (auto& c : cases) {
    Interval iv = cos2pi(Rational(c.num, c.den), 64);
    CHECK(iv.width() <= pow2(-60));
    CHECK((double)iv.lo <= c.expect + 1e-15);
    CHECK((double)iv.hi >= c.expect - 1e-15);
  }
}

TEST_CASE("sine enclosures and negative/large arguments") {
  for (long long j = -7; j <= 17; ++j) {
    Rational t(j, 13);
    Interval c = cos2pi(t, 64), s = sin2pi(t, 64);
    double ce = std::cos(2 * M_PI * (double)j / 13), se = std::sin(2 * M_PI * (double)j / 13);
    CHECK((double)c.lo <= ce + 1e-15);
    CHECK((double)c.hi >= ce - 1e-15);
    CHECK((double)s.lo <= se + 1e-15);
    CHECK((double)s.hi >= se - 1e-15);
    // Pythagorean check with exact interval arithmetic
    Interval sq = c * c + s * s;
    CHECK(sq.contains(Rational(1)));
  }
}

TEST_CASE("cos_pi_frac matches cos2pi at half the angle") {
  Interval a = cos_pi_frac(1, 7, 64);
  Interval b = cos2pi(Rational(1, 14), 64);
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK((double)sin_pi_frac(1, 2, 32).lo == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cos table") {
  auto t = cos_table(7, 48);
  CHECK(t.size() == 7);
  CHECK(t[0].lo == 1);
  for (long long j = 1; j < 7; ++j) {
    double e = std::cos(2 * M_PI * (double)j / 7);
    CHECK((double)t[j].mid() == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("interval width stays bounded through long computations") {
  // repeated multiply-add with rounding at 96 bits: denominators stay dyadic
  Interval acc(Rational(1));
  for (int i = 1; i <= 1000; ++i) {
    acc = rounded(acc * Interval(Rational(1000003, 1000000)) + Interval(Rational(1, i)), 96);
  }
  CHECK(denominator(acc.lo) <= Int(1) << 96);
  CHECK(acc.width() < Rational(1, 1000000));
}
