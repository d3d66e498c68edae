#include "sumfree/granularize.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "sumfree/fourier.hpp"
#include "sumfree/interval.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree {

namespace {

std::vector<long long> norm_set(const Group& g, std::vector<long long> s,
                                const char* what) {
  for (long long x : s)
    if (x < 0 || x >= g.order())
      throw sf_error(errc::invalid_argument,
                     std::string(what) + ": element index out of range");
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool in_sorted(const std::vector<long long>& v, long long x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// |arg chi_a(d)| with arg in [-pi, pi): the pairing r in [0, m) gives the
// angle 2*pi*r/m, whose absolute principal value is 2*pi*min(r, m-r)/m.
double abs_arg(const Group& g, long long a, long long d) {
  static const double pi = std::acos(-1.0);
  long long m = g.exponent();
  long long r = g.pairing(a, d);
  long long rmin = std::min(r, m - r);
  return pi * ((double)(2 * rmin) / (double)m);
}

// Least d outside g1 with element order >= min_order meeting every arc
// constraint; -1 when none exists.  best_d/best_excess report the candidate
// (order requirement already satisfied) with the smallest worst excess.
long long scan_direction(const Group& g, const Subgroup& g1,
                         const std::vector<std::pair<long long, double>>& etas,
                         long long min_order, long long* best_d,
                         double* best_excess, bool* any_candidate) {
  *best_d = -1;
  *best_excess = std::numeric_limits<double>::infinity();
  *any_candidate = false;
  for (long long d = 0; d < g.order(); ++d) {
    if (in_sorted(g1.elements, d)) continue;
    if (g.element_order(d) < min_order) continue;
    *any_candidate = true;
    double excess = 0;
    for (const auto& [a, eta] : etas)
      excess = std::max(excess, abs_arg(g, a, d) - eta);
    if (excess <= 0) return d;
    if (excess < *best_excess) {
      *best_excess = excess;
      *best_d = d;
    }
  }
  return -1;
}

}  // namespace

GrainStructure coset_grains(const Group& g, const Subgroup& h) {
  if (!is_subgroup(g, h.elements))
    throw sf_error(errc::invalid_subgroup, "coset_grains: not a subgroup");
  GrainStructure out;
  out.kind = GrainKind::coset;
  out.subgroup = h;
  long long n = g.order();
  std::vector<char> seen((std::size_t)n, 0);
  for (long long x = 0; x < n; ++x) {
    if (seen[(std::size_t)x]) continue;
    std::vector<long long> coset;
    coset.reserve(h.elements.size());
    for (long long e : h.elements) {
      long long y = g.add(x, e);
      seen[(std::size_t)y] = 1;
      coset.push_back(y);
    }
    std::sort(coset.begin(), coset.end());
    out.grains.push_back(std::move(coset));
  }
  return out;
}

GrainStructure progression_grains(const Group& g, long long d, long long L) {
  if (d < 0 || d >= g.order())
    throw sf_error(errc::invalid_argument, "progression_grains: d out of range");
  if (L < 1)
    throw sf_error(errc::invalid_argument, "progression_grains: L must be >= 1");
  GrainStructure out;
  out.kind = GrainKind::progression;
  out.subgroup = closure(g, {d});
  out.d = d;
  out.L = L;
  long long n = g.order();
  long long m = g.element_order(d);
  std::vector<char> seen((std::size_t)n, 0);
  for (long long x = 0; x < n; ++x) {
    if (seen[(std::size_t)x]) continue;
    // Walk the <d>-coset from its least element (x, by the scan order).
    std::vector<long long> walk;
    walk.reserve((std::size_t)m);
    long long y = x;
    for (long long i = 0; i < m; ++i) {
      seen[(std::size_t)y] = 1;
      walk.push_back(y);
      y = g.add(y, d);
    }
    long long full = m / L;
    for (long long b = 0; b < full; ++b) {
      std::vector<long long> grain(walk.begin() + b * L,
                                   walk.begin() + (b + 1) * L);
      std::sort(grain.begin(), grain.end());
      out.grains.push_back(std::move(grain));
    }
    if (m % L) {
      std::vector<long long> left(walk.begin() + full * L, walk.end());
      std::sort(left.begin(), left.end());
      out.leftovers.push_back(std::move(left));
    }
  }
  return out;
}

std::vector<long long> large_spectrum(const Group& g,
                                      const std::vector<long long>& a,
                                      double threshold) {
  if (!(threshold > 0))
    throw sf_error(errc::invalid_argument,
                   "large_spectrum: threshold must be positive");
  auto A = norm_set(g, a, "large_spectrum");
  auto fhat = dft(g, A);
  std::vector<long long> r;
  for (long long ch = 1; ch < g.order(); ++ch)
    if (std::abs(fhat[(std::size_t)ch]) > threshold) r.push_back(ch);
  double budget =
      (double)g.order() * (double)A.size() / (threshold * threshold);
  if ((double)r.size() > 4.0 * budget + 1e-9)
    throw sf_error(errc::internal,
                   "large_spectrum: Parseval cardinality bound violated");
  return r;
}

Subgroup annihilator(const Group& g, const std::vector<long long>& chars) {
  auto cs = norm_set(g, chars, "annihilator");
  Subgroup out;
  for (long long x = 0; x < g.order(); ++x) {
    bool killed = true;
    for (long long a : cs)
      if (g.pairing(a, x) != 0) {
        killed = false;
        break;
      }
    if (killed) out.elements.push_back(x);
  }
  return out;
}

long long find_direction(const Group& g, const Subgroup& g1,
                         const std::vector<std::pair<long long, double>>& etas) {
  if (!is_subgroup(g, g1.elements))
    throw sf_error(errc::invalid_subgroup, "find_direction: g1 is not a subgroup");
  for (const auto& [a, eta] : etas) {
    (void)eta;
    if (a < 0 || a >= g.order())
      throw sf_error(errc::invalid_argument,
                     "find_direction: character index out of range");
  }
  long long best_d = -1;
  double best_excess = 0;
  bool any = false;
  long long d = scan_direction(g, g1, etas, 1, &best_d, &best_excess, &any);
  if (d >= 0) return d;
  if (!any)
    throw sf_error(errc::not_found,
                   "find_direction: every element lies in the annihilator");
  throw sf_error(errc::not_found,
                 "find_direction: no element meets the arc constraints; best "
                 "near-miss d=" + std::to_string(best_d) + " exceeds by " +
                 std::to_string(best_excess));
}

GranularizationResult granularize(const Group& g, const std::vector<long long>& a,
                                  long long L, long long L_prime,
                                  const Rational& eps) {
  if (L < 1 || L_prime < 1)
    throw sf_error(errc::invalid_argument, "granularize: L and L' must be >= 1");
  if (!(eps > 0 && eps < Rational(1, 2)))
    throw sf_error(errc::invalid_argument, "granularize: need 0 < eps < 1/2");
  auto A = norm_set(g, a, "granularize");
  if (!is_sum_free(g, A))
    throw sf_error(errc::premise_failed, "granularize: A is not sum-free");

  long long n = g.order();
  GranularizationResult out;
  out.delta = eps * eps * eps * eps / 65536;

  // n > L' (10L/eps)^{2^{34} eps^{-8}}, compared through logarithms (the
  // right-hand side overflows any direct representation long before the
  // inequality could hold).
  {
    double eps_d = (double)Rational(eps);
    double lhs = std::log((double)n);
    double rhs = std::log((double)L_prime) +
                 std::pow(2.0, 34.0) * std::pow(eps_d, -8.0) *
                     std::log(10.0 * (double)L / eps_d);
    out.premise_71_holds = lhs > rhs;
  }

  Rational thr_exact = out.delta * n / 2;
  double thr = (double)Rational(thr_exact);
  auto R = large_spectrum(g, A, thr);
  Subgroup g1 = annihilator(g, R);

  std::vector<char> in_a((std::size_t)n, 0);
  for (long long x : A) in_a[(std::size_t)x] = 1;
  auto count_in = [&](const std::vector<long long>& grain) {
    long long c = 0;
    for (long long x : grain) c += in_a[(std::size_t)x];
    return c;
  };

  if (g1.size() >= L_prime) {
    out.structure = coset_grains(g, g1);
    for (const auto& grain : out.structure.grains)
      if (Rational(count_in(grain)) * 4 >= eps * g1.size())
        out.a_prime.insert(out.a_prime.end(), grain.begin(), grain.end());
    out.p = g1.elements;
  } else {
    // Progression branch: d outside G1 of order >= max(2L+1, ceil(8L/eps)),
    // with every large-spectrum character nearly constant on steps of d.
    Int required_order = rational_ceil(Rational(8 * L) / eps);
    if (required_order < 2 * L + 1) required_order = 2 * L + 1;
    long long min_order = required_order > g.exponent()
                              ? g.exponent() + 1
                              : (long long)required_order;

    auto fhat = dft(g, A);
    static const double pi = std::acos(-1.0);
    double eps_d = (double)Rational(eps);
    double delta_d = (double)Rational(out.delta);
    std::vector<std::pair<long long, double>> etas;
    etas.reserve(R.size());
    for (long long ch : R) {
      double mag = std::abs(fhat[(std::size_t)ch]);
      double eta = std::min(eps_d * pi / 4,
                            std::sqrt(6.0 * delta_d * (double)n / mag)) /
                   (double)L;
      etas.emplace_back(ch, eta);
    }

    long long best_d = -1;
    double best_excess = 0;
    bool any = false;
    long long d = scan_direction(g, g1, etas, min_order, &best_d, &best_excess,
                                 &any);
    if (d < 0) {
      std::string msg =
          "granularize: no valid direction (coset path needs |G1| >= " +
          std::to_string(L_prime) + ", found " + std::to_string(g1.size()) +
          "); ";
      if (!any)
        msg += "no element outside G1 has order >= " +
               required_order.str();
      else
        msg += "best near-miss d=" + std::to_string(best_d) +
               " exceeds an arc constraint by " + std::to_string(best_excess);
      throw sf_error(errc::search_failure, msg);
    }

    out.structure = progression_grains(g, d, L);
    for (const auto& grain : out.structure.grains)
      if (Rational(count_in(grain)) * 8 >= eps * L)
        out.a_prime.insert(out.a_prime.end(), grain.begin(), grain.end());
    for (long long j = -(L - 1); j <= L - 1; ++j)
      out.p.push_back(g.scalar_mul(j, d));
    std::sort(out.p.begin(), out.p.end());
    out.p.erase(std::unique(out.p.begin(), out.p.end()), out.p.end());
    if ((long long)out.p.size() != 2 * L - 1)
      throw sf_error(errc::internal,
                     "granularize: progression P is not 2L-1 distinct points");
  }

  std::sort(out.a_prime.begin(), out.a_prime.end());
  std::vector<char> in_ap((std::size_t)n, 0);
  for (long long x : out.a_prime) in_ap[(std::size_t)x] = 1;
  for (long long x : A)
    if (!in_ap[(std::size_t)x]) ++out.removed;
  out.schur_a_prime = schur_triples(g, out.a_prime);

  // Both conclusions are theorems once a P was produced; failure here would
  // mean the construction itself is wrong.
  if (!(Rational(out.removed) <= eps * n / 4))
    throw sf_error(errc::internal, "granularize: |A \\ A'| > eps n / 4");
  if (!(Rational(out.schur_a_prime) <= eps * n * n / 4))
    throw sf_error(errc::internal, "granularize: Schur(A') > eps n^2 / 4");
  return out;
}

FamilyBounds family_bounds(long long n, long long L, const Rational& rho,
                           int bits) {
  if (n < 1 || L < 1)
    throw sf_error(errc::invalid_argument, "family_bounds: need n, L >= 1");
  if (rho < 0)
    throw sf_error(errc::invalid_argument, "family_bounds: rho must be >= 0");
  FamilyBounds out;
  out.log2_granular = Rational(3 * n, L);
  out.granular_exact = (3 * n) % L == 0;
  out.granular_applicable = L * L <= n;
  out.granular_bound = Int(1) << (unsigned)rational_ceil(out.log2_granular);

  // sqrt(rho) exactly when rho is the square of a rational.
  Int num = numerator(rho), den = denominator(rho);
  Int rn = isqrt(num), rd = isqrt(den);
  if (rn * rn == num && rd * rd == den) {
    out.log2_subset = Rational(rn, rd) * n;
    out.subset_exact = denominator(out.log2_subset) == 1;
  } else {
    out.log2_subset = root_enclosure(rho, 2, bits).hi * n;
    out.subset_exact = false;
  }
  out.subset_bound = Int(1) << (unsigned)rational_ceil(out.log2_subset);

  if (rho == 0) {
    out.subset_applicable = true;
  } else {
    double r = (double)rho;
    out.subset_applicable =
        r < 1 && std::sqrt(r) * std::log2(std::exp(1.0) / r) <= 0.5;
  }
  return out;
}

}  // namespace sumfree
