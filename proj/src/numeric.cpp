#include <cctype>

#include "sumfree/interval.hpp"
#include "sumfree/trig.hpp"

namespace sumfree {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw sf_error(errc::invalid_argument, "empty rational literal");
  auto bad = [&] { throw sf_error(errc::invalid_argument, "bad rational literal: " + s); };
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  std::string int_part, frac_part, den_part;
  std::string* cur = &int_part;
  bool slash = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur->push_back(c);
    } else if (c == '.' && !dot && !slash) {
      dot = true;
      cur = &frac_part;
    } else if (c == '/' && !slash && !dot) {
      slash = true;
      cur = &den_part;
    } else {
      bad();
    }
  }
  if (int_part.empty() && frac_part.empty()) bad();
  // cpp_int's string constructor honors octal prefixes; strip leading zeros
  auto as_int = [](const std::string& digits) {
    size_t nz = digits.find_first_not_of('0');
    if (nz == std::string::npos) return Int(0);
    return Int(digits.substr(nz));
  };
  Rational r;
  if (slash) {
    if (den_part.empty()) bad();
    Int num = as_int(int_part), den = as_int(den_part);
    if (den == 0) bad();
    r = Rational(num, den);
  } else {
    r = Rational(as_int(int_part));
    if (!frac_part.empty()) {
      Int fden = 1;
      for (size_t k = 0; k < frac_part.size(); ++k) fden *= 10;
      r += Rational(as_int(frac_part), fden);
    }
  }
  return neg ? -r : r;
}

Int rational_floor(const Rational& r) {
  Int num = numerator(r), den = denominator(r);
  Int q = num / den;  // truncation toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

Int rational_ceil(const Rational& r) { return -rational_floor(-r); }

std::string decimal_string(const Rational& r, int digits) {
  Rational x = r < 0 ? -r : r;
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int v = rational_floor(x * scale);
  std::string d = v.str();
  if ((int)d.size() <= digits) d.insert(0, digits + 1 - d.size(), '0');
  std::string out = d.substr(0, d.size() - digits);
  if (digits > 0) out += "." + d.substr(d.size() - digits);
  if (r < 0 && v != 0) out.insert(0, 1, '-');
  return out;
}

Int isqrt(const Int& v) {
  if (v < 0) throw sf_error(errc::invalid_argument, "isqrt of negative");
  return boost::multiprecision::sqrt(v);
}

Int iroot(const Int& v, unsigned k) {
  if (v < 0) throw sf_error(errc::invalid_argument, "iroot of negative");
  if (k == 0) throw sf_error(errc::invalid_argument, "0th root");
  if (k == 1 || v <= 1) return v;
  if (k == 2) return isqrt(v);
  // Newton iteration from an over-estimate; lands on floor(v^(1/k)).
  unsigned bl = boost::multiprecision::msb(v) + 1;
  Int x = Int(1) << (bl / k + 1);
  while (true) {
    Int xk1 = boost::multiprecision::pow(x, k - 1);
    Int nx = ((k - 1) * x * xk1 + v) / (k * xk1);
    if (nx >= x) break;
    x = nx;
  }
  while (boost::multiprecision::pow(x, k) > v) --x;
  while (boost::multiprecision::pow(x + 1, k) <= v) ++x;
  return x;
}

Rational pow2(long long e) {
  if (e >= 0) return Rational(Int(1) << e);
  return Rational(1, Int(1) << (-e));
}

Rational dyadic_round_down(const Rational& r, int bits) {
  Int scaled = rational_floor(r * pow2(bits));
  return Rational(scaled, Int(1) << bits);
}

Rational dyadic_round_up(const Rational& r, int bits) {
  return -dyadic_round_down(-r, bits);
}

Interval rounded(const Interval& x, int bits) {
  return {dyadic_round_down(x.lo, bits), dyadic_round_up(x.hi, bits)};
}

Interval operator*(const Interval& a, const Interval& b) {
  Rational c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0)
    throw sf_error(errc::invalid_argument, "interval division by zero-containing interval");
  Interval inv{Rational(1) / b.hi, Rational(1) / b.lo};
  return a * inv;
}

Interval root_enclosure(const Rational& v, unsigned k, int bits) {
  if (v < 0) throw sf_error(errc::invalid_argument, "root of negative");
  // floor(2^bits * v^(1/k)) = iroot(floor(2^(k*bits) * v), k): if t is the
  // latter then t^k <= 2^(k*bits) v < (t+1)^k because both sides are integers.
  Int scaled = rational_floor(v * pow2((long long)k * bits));
  Int t = iroot(scaled, k);
  Rational lo(t, Int(1) << bits);
  // Exactness check: v = (t/2^bits)^k means the root is rational and lo == hi.
  if (Rational(boost::multiprecision::pow(t, k), Int(1) << ((long long)k * bits)) == v)
    return {lo, lo};
  return {lo, Rational(t + 1, Int(1) << bits)};
}

// ---------------------------------------------------------------------------
// pi and the trigonometric enclosures.

Interval pi_interval() {
  // 75 fractional digits, truncated and truncated+ulp.
  static const char* digits =
      "3."
      "141592653589793238462643383279502884197169399375105820974944592307816406286";
  static Interval cached = [] {
    Rational lo = parse_rational(digits);
    Rational hi = lo + Rational(1, boost::multiprecision::pow(Int(10), 75));
    return Interval{lo, hi};
  }();
  return cached;
}

namespace {

// Alternating Taylor series for cos(x), x rational in [0, ~0.79]; terms
// decrease immediately, so even/odd partial sums bracket the value.
Interval cos_taylor(const Rational& x, int bits) {
  Rational x2 = x * x;
  Rational term(1), sum(1);
  Interval out;
  // S_0 = 1 >= cos(x); successive partial sums alternate below/above.
  Rational upper = sum, lower;
  Rational eps = pow2(-bits - 4);
  for (int i = 1;; ++i) {
    term *= x2;
    term /= (2 * i - 1) * (2 * i);
    if (i % 2 == 1) {
      sum -= term;
      lower = sum;
    } else {
      sum += term;
      upper = sum;
    }
    if (term < eps && i >= 2) break;
    if (i > 200) throw sf_error(errc::internal, "cos series failed to converge");
  }
  if (lower > upper) std::swap(lower, upper);
  return {dyadic_round_down(lower, bits), dyadic_round_up(upper, bits)};
}

Interval sin_taylor(const Rational& x, int bits) {
  Rational x2 = x * x;
  Rational term = x, sum = x;
  Rational upper = sum, lower;
  Rational eps = pow2(-bits - 4);
  for (int i = 1;; ++i) {
    term *= x2;
    term /= (2 * i) * (2 * i + 1);
    if (i % 2 == 1) {
      sum -= term;
      lower = sum;
    } else {
      sum += term;
      upper = sum;
    }
    if (term < eps && i >= 2) break;
    if (i > 200) throw sf_error(errc::internal, "sin series failed to converge");
  }
  if (lower > upper) std::swap(lower, upper);
  return {dyadic_round_down(lower, bits), dyadic_round_up(upper, bits)};
}

// cos of an interval angle contained in [0, pi/2]: cos is decreasing there.
Interval cos_on_interval(const Interval& theta, int bits) {
  Interval chi = cos_taylor(theta.lo, bits);
  Interval clo = cos_taylor(theta.hi, bits);
  return {clo.lo, chi.hi};
}

// sin of an interval angle contained in [0, pi/2]: increasing.
Interval sin_on_interval(const Interval& theta, int bits) {
  Interval slo = sin_taylor(theta.lo, bits);
  Interval shi = sin_taylor(theta.hi, bits);
  return {slo.lo, shi.hi};
}

Rational mod1(const Rational& t) {
  Rational m = t - Rational(rational_floor(t));
  return m;  // in [0, 1)
}

}  // namespace

Interval cos2pi(const Rational& t, int bits) {
  Rational u = mod1(t);  // cos(2 pi u), u in [0,1)
  // Fold to [0, 1/2]: cos(2pi(1-u)) = cos(2pi u).
  if (u > Rational(1, 2)) u = 1 - u;
  // Fold to [0, 1/4]: cos(2pi u) = -cos(2pi(1/2 - u)).
  bool negate = false;
  if (u > Rational(1, 4)) {
    u = Rational(1, 2) - u;
    negate = true;
  }
  // Fold to [0, 1/8]: cos(2pi u) = sin(2pi(1/4 - u)).
  bool use_sin = false;
  if (u > Rational(1, 8)) {
    u = Rational(1, 4) - u;
    use_sin = true;
  }
  Interval two_pi_u = (2 * u) * pi_interval();
  Interval r = use_sin ? sin_on_interval(two_pi_u, bits) : cos_on_interval(two_pi_u, bits);
  if (negate) r = -r;
  return r;
}

Interval sin2pi(const Rational& t, int bits) { return cos2pi(Rational(1, 4) - t, bits); }

Interval cos_pi_frac(long long a, long long b, int bits) {
  return cos2pi(Rational(a, 2 * b), bits);
}

Interval sin_pi_frac(long long a, long long b, int bits) {
  return sin2pi(Rational(a, 2 * b), bits);
}

std::vector<Interval> cos_table(long long q, int bits) {
  std::vector<Interval> t;
  t.reserve(q);
  for (long long j = 0; j < q; ++j) t.push_back(cos2pi(Rational(j, q), bits));
  return t;
}

}  // namespace sumfree
