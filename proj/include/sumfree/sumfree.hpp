#pragma once

#include <vector>

#include "sumfree/group.hpp"

namespace sumfree {

// Type I(p): some prime p | n, p = 2 (mod 3), p the smallest such.
// Type II: no such prime, 3 | n.
// Type III: all prime factors of n are 1 (mod 3); parameter m = exponent(G).
enum class GroupType { I, II, III };

struct Classification {
  GroupType type;
  long long parameter;  // p for I, 3 for II, m for III
  Rational nu;          // 1/3 + 1/3p | 1/3 | 1/3 - 1/3m
};

Classification classify(const Group& g);
Rational nu(const Group& g);
const char* type_name(GroupType t);

// Number of ordered Schur triples: pairs (x, y) in A x A with x + y in A.
long long schur_triples(const Group& g, const std::vector<long long>& a);
bool is_sum_free(const Group& g, const std::vector<long long>& a);

// The canonical extremal set: preimage of {t : q < 3t <= 2q} under a
// surjection G -> Z/q, where q = p (type I), 3 (type II) or exponent (III).
// Verified sum-free of size nu(G)*n before returning.
std::vector<long long> construct_extremal(const Group& g);

struct SearchBudget {
  long long max_n_mu = 48;
  long long max_n_count = 32;
  unsigned long long max_nodes = 0;  // 0 = unlimited
};

struct MuResult {
  long long mu_n = 0;                // |largest sum-free set|
  std::vector<long long> witness;    // first maximum found (deterministic)
  unsigned long long nodes = 0;
};

// Exact maximum via branch and bound: candidates ordered by descending
// conflict degree, pruning against the best-found size only.
MuResult mu_exact(const Group& g, const SearchBudget& budget = {});

// Exact |SF(G)| (the empty set counts) by backtracking over extendable
// partial sets in index order.
Int count_sf(const Group& g, const SearchBudget& budget = {});

// 2^n filter oracle, n <= 24 enforced; for tests and cross-checks.
Int count_sf_naive(const Group& g);

// log2(count)/n with ~40 significant digits.
std::string sigma_decimal(const Group& g, const Int& count, int digits = 40);
double sigma_double(const Group& g, const Int& count);

// W * c_p * 2^{nu*n} for type I(p): W = 1 if p = 2 else 1/2, c_p = number of
// elements of order exactly p.  Exact integer (the halving always divides).
Int main_term_typeIp(const Group& g);

// nu(G) + 2^20 * delta^(1/5), certified upper enclosure of the fifth root.
Rational stability_bound(const Group& g, const Rational& delta, int bits = 64);

}  // namespace sumfree
