#pragma once

#include <string>
#include <vector>

#include "sumfree/group.hpp"
#include "sumfree/interval.hpp"

namespace sumfree {

// ---------------------------------------------------------------------------
// Representation counts and popular sums/differences.
// ---------------------------------------------------------------------------

// r[x] = #{(a, b) in A x B : a + b = x}; sum of r over G equals |A||B|.
struct PopTable {
  std::vector<long long> r;
  long long k = 0;  // |A|
  long long l = 0;  // |B|
};

PopTable r_table(const Group& g, const std::vector<long long>& a,
                 const std::vector<long long>& b);

// {d : d = x1 - x2 has at least K representations with x1, x2 in X}.
std::vector<long long> popular_differences(const Group& g,
                                           const std::vector<long long>& x,
                                           long long k_threshold);

// S_K(A, B) = {x : r(A,B,x) >= K}; exact rational threshold.
std::vector<long long> popular_sums(const Group& g, const std::vector<long long>& a,
                                    const std::vector<long long>& b,
                                    const Rational& k_threshold);

// sum_x min(t, r(A,B,x)) >= t * min(n, |A| + |B| - D - t), D the defect.
// ok is a theorem for all valid inputs; both sides are exact integers.
struct KPResult {
  long long lhs = 0;
  long long rhs = 0;
  bool ok = false;
};
KPResult verify_kp(const Group& g, const std::vector<long long>& a,
                   const std::vector<long long>& b, long long t);

// |S_K(A,B)| >= min(n, |A| + |B| - D) - 3*sqrt(K*n), requiring
// min(|A|,|B|) >= sqrt(K*n).  Comparisons are done exactly by squaring;
// rhs is reported in double precision for display only.
struct PopularSumsBound {
  long long lhs = 0;  // |S_K(A,B)|
  double rhs = 0.0;
  bool ok = false;
};
PopularSumsBound verify_popular_sums_bound(const Group& g,
                                           const std::vector<long long>& a,
                                           const std::vector<long long>& b,
                                           const Rational& k_threshold);

// ---------------------------------------------------------------------------
// Sum-free extraction from an almost sum-free set.
// ---------------------------------------------------------------------------

// Given |F| >= (1/3 + eps)n and at most eps^3 n^2 / 27 Schur triples in F,
// returns sum-free S subseteq F with |S| >= |F| - eps*n.  Writing
// N = eps^3 n^2 / 27: when N^2 <= n, one element of each Schur triple is
// removed (highest triple incidence first); otherwise K = ceil(N^{2/3}n^{-1/3})
// and F' with F' - F' inside the K-popular differences of F is found by greedy
// deletion (then bounded exhaustive search), and S = F' \ (F' - F').
std::vector<long long> extract_sumfree(const Group& g, const std::vector<long long>& f,
                                       const Rational& eps);

// ---------------------------------------------------------------------------
// Covers: Kneser stabilizer quotients and type I(p) homomorphisms.
// ---------------------------------------------------------------------------

// For sum-free A with |A| >= n/3 + r (r > 0): H = stabilizer of A + A has
// |H| >= 3r, and B = pi(A) is sum-free in G/H, so A is covered by pi^{-1}(B).
struct KneserCover {
  Subgroup stabilizer;
  QuotientMap map;              // quotient group and projection
  std::vector<long long> image; // B = pi(A), sum-free in the quotient
};
KneserCover kneser_cover(const Group& g, const std::vector<long long>& a,
                         const Rational& r);

// For G of type I(p), p = 3k + 2, and sum-free A with
// |A| > (1/3 + 1/(3(p+1)))n: a homomorphism psi: G -> Z/p with
// A inside psi^{-1}({k+1, ..., 2k+1}).  First match in canonical hom order.
HomZp typeI_cover(const Group& g, const std::vector<long long>& a);

// For prime p = 3k + 2 and sum-free B in Z/p with |B| = k + 1: the least
// c in 1..p-1 with B = c * {k+1, ..., 2k+1}.  Existence is a theorem
// (Vosper-type classification); absence raises an internal error.
long long vosper_check(const Group& zp, const std::vector<long long>& b);

// ---------------------------------------------------------------------------
// Special direction and coset density profiles.
// ---------------------------------------------------------------------------

// Densities of A on the cosets of ker(gamma), indexed by Z/q, q = ord(gamma).
struct CosetProfile {
  long long gamma = 0;            // character index (self-dual labelling)
  long long q = 1;                // order of gamma
  Subgroup kernel;                // H = ker gamma
  std::vector<Rational> alphas;   // alpha_j = |A n H_j| / |H|, j in Z/q
  long long k = 0;                // (q - 1)/6 when q = 1 (mod 6), else 0
  bool has_middle = false;        // q = 1 (mod 6); middle = {k+1, ..., 5k}
};

CosetProfile coset_profile(const Group& g, const std::vector<long long>& a,
                           long long gamma);

// gamma minimizing Re Ahat over nontrivial characters; ties within
// 1e-9 * n go to the least character index.
struct SpecialDirection {
  long long gamma = 0;
  double re_min = 0.0;
  CosetProfile profile;
};
SpecialDirection special_direction(const Group& g, const std::vector<long long>& a);

// beta_i = 0 if alpha_i <= kappa, else (alpha_i - kappa) / (1 + kappa).
struct BetaProfile {
  std::vector<Rational> betas;
  Rational kappa;
};
BetaProfile beta_profile(const CosetProfile& profile, const Rational& kappa);

// True iff alpha_i <= 2*kappa for every i outside the middle {k+1,...,5k};
// requires q = 1 (mod 6).
bool check_essentially_middled(const CosetProfile& profile, const Rational& kappa);

// ---------------------------------------------------------------------------
// The alpha-inequality battery.
// ---------------------------------------------------------------------------

// One clause of the battery.  A clause is flagged as violated only when the
// violation is certain under the interval enclosures (false negatives are
// impossible for the exact clauses, which carry rational slack endpoints).
struct ClauseReport {
  std::string name;       // "i", "ii", "iii", "iv", "v", "fourier"
  bool applicable = true;
  bool pass = true;       // !violation_certain when applicable
  bool has_slack = false;
  Rational slack_lo, slack_hi;  // enclosure of the worst slack (>= 0 means holds)
  std::string detail;
};

// With kappa = 32 delta^{1/3} q^{2/3} (enclosed) and H_j-densities alpha_j:
//   (i)   alpha_l > kappa  =>  alpha_j + alpha_{j+l} <= 1 + kappa  (all j)
//   (ii)  alpha_i + alpha_{2i} <= 1 + kappa                        (all i)
//   (iii) alpha_u, alpha_v, alpha_w > kappa, u + v = w
//           =>  alpha_u + alpha_v + alpha_w <= 1 + lambda(G) + kappa
//   (iv)  [needs |A| >= (nu - eta/8)n and kappa <= eta/8q]
//           q^{-1} sum_j alpha_j cos(2 pi j / q) + nu_q^2/(1 - nu_q) < 3 eta/4
//   (v)   [needs |A| >= (nu - eta/8)n]  sum_j alpha_j >= (nu_q - eta/8) q
//   fourier: [needs |A| >= n/4, and alpha (1 - alpha) >= 1/6 unless delta = 0]
//           min_gamma Re Ahat(gamma) <= (6 delta - alpha^2/(1 - alpha)) n
// where eta = 2^{-23} and nu_q = (q - 1)/3q.  Requires the actual Schur
// count of A to be at most delta * n^2.
struct AlphaReport {
  CosetProfile profile;
  Rational delta;
  Interval kappa;
  bool all_pass = true;
  std::vector<ClauseReport> clauses;
};
AlphaReport check_alpha_inequalities(const Group& g, const std::vector<long long>& a,
                                     const Rational& delta, unsigned bits = 64);

}  // namespace sumfree
