#pragma once

#include <utility>
#include <vector>

#include "sumfree/group.hpp"
#include "sumfree/rational.hpp"

namespace sumfree {

enum class GrainKind { coset, progression };

// A canonical partition of G into "grains".
//
// Coset kind: the grains are the H-cosets, listed by least representative;
// there are no leftovers.  Progression kind: each coset of <d> is walked as
// x, x+d, x+2d, ... starting from its least element and chopped into
// floor(ord(d)/L) grains of exactly L consecutive terms; the trailing
// ord(d) mod L elements of the walk form one leftover block (omitted when
// empty).  Leftover blocks are not grains.  Element lists are sorted, and
// grains/leftovers are listed by the least element of their coset, then by
// position along the walk, so the decomposition is deterministic.
struct GrainStructure {
  GrainKind kind = GrainKind::coset;
  Subgroup subgroup;  // coset kind: H; progression kind: <d>
  long long d = 0;    // progression kind only
  long long L = 0;    // progression kind only
  std::vector<std::vector<long long>> grains;
  std::vector<std::vector<long long>> leftovers;  // progression kind only
};

GrainStructure coset_grains(const Group& g, const Subgroup& h);
GrainStructure progression_grains(const Group& g, long long d, long long L);

// R = { a != 0 : |Ahat(chi_a)| > threshold }, sorted ascending.  Requires
// threshold > 0.  The Parseval consequence |R| <= n|A|/threshold^2 (a fortiori
// the cruder 4 n|A| / threshold^2) is asserted on the way out.
std::vector<long long> large_spectrum(const Group& g,
                                      const std::vector<long long>& a,
                                      double threshold);

// Joint kernel { x : chi_a(x) = 1 for all a in chars }; this equals the
// annihilator of the subgroup of characters generated by chars.
Subgroup annihilator(const Group& g, const std::vector<long long>& chars);

// Least d not in g1 with |arg chi_a(d)| <= eta for every (a, eta) in etas,
// where arg is taken in [-pi, pi).  The scan is exhaustive over G in index
// order.  Throws not_found when no element qualifies; the message carries the
// best near-miss (the candidate with the smallest worst arc excess).
long long find_direction(const Group& g, const Subgroup& g1,
                         const std::vector<std::pair<long long, double>>& etas);

struct GranularizationResult {
  std::vector<long long> a_prime;  // union of the kept grains, sorted
  std::vector<long long> p;        // the subgroup, or {-(L-1)d, ..., (L-1)d}
  GrainStructure structure;        // the grain partition A' is built from
  long long removed = 0;           // |A \ A'|
  long long schur_a_prime = 0;     // Schur triples of A'
  Rational delta;                  // 2^{-16} eps^4
  bool premise_71_holds = false;   // n > L' (10L/eps)^{2^{34} eps^{-8}}
};

// Granularization of a sum-free set A (0 < eps < 1/2, L >= 1, L' >= 1).
//
// With delta = 2^{-16} eps^4, let R be the spectrum above delta*n/2 and G1
// the annihilator of R.  If |G1| >= L', A' is the union of those G1-cosets
// holding at least eps|G1|/4 points of A (coset type).  Otherwise the scan
// looks for a direction d outside G1 of order at least max(2L+1, ceil(8L/eps))
// with |arg chi_a(d)| <= (1/L) min(eps*pi/4, sqrt(6 delta n / |Ahat(a)|)) for
// every a in R, builds the L-grain partition along d, and keeps the grains
// holding at least eps*L/8 points of A (progression type); P is then
// {-(L-1)d, ..., (L-1)d}.  On success both
//     |A \ A'| <= eps*n/4    and    Schur(A') <= eps*n^2/4
// are theorems; they are re-checked and an internal error is raised if either
// fails.  When the direction scan comes up empty (the usual outcome at small
// n: the arc constraints force astronomically large groups) a search_failure
// error reports the best near-miss.  premise_71_holds only records whether
// the size hypothesis guaranteeing existence of d holds; the construction is
// attempted regardless.
GranularizationResult granularize(const Group& g, const std::vector<long long>& a,
                                  long long L, long long L_prime,
                                  const Rational& eps);

// The two counting bounds: at most 2^{3n/L} subsets of an order-n group are
// L-granular of either kind (valid for L <= sqrt(n)), and at most 2^{n sqrt(rho)}
// subsets of an n-element set have size <= rho*n (valid for rho below an
// absolute constant; we flag the proof's sufficient condition
// sqrt(rho) log2(e/rho) <= 1/2).  Exponents are reported exactly when
// rational; the Int bounds round the exponent up, so they are certified upper
// bounds in every case.
struct FamilyBounds {
  Rational log2_granular;     // 3n/L, exact
  Int granular_bound;         // 2^{ceil(3n/L)}
  bool granular_exact;        // L | 3n
  bool granular_applicable;   // L^2 <= n
  Rational log2_subset;       // n * sqrt(rho) when rational, else an upper
                              // enclosure of it
  Int subset_bound;           // 2^{ceil(log2_subset)}
  bool subset_exact;          // sqrt(rho) rational and n*sqrt(rho) integral
  bool subset_applicable;     // sqrt(rho) log2(e/rho) <= 1/2 (rho = 0 counts)
};

FamilyBounds family_bounds(long long n, long long L, const Rational& rho,
                           int bits = 64);

}  // namespace sumfree
