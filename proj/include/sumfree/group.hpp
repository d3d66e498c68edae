#pragma once

#include <string>
#include <vector>

#include "sumfree/rational.hpp"

namespace sumfree {

// Finite abelian group presented as a product of cyclic factors Z/d1 x ... x
// Z/dk.  Elements are indexed 0..n-1 in row-major mixed radix: the index of
// (x1,...,xk) is x1*d2*...*dk + x2*d3*...*dk + ... + xk.  Characters use the
// same indexing (self-dual): chi_a(x) = exp(2*pi*i * sum_j a_j x_j / d_j).
class Group {
 public:
  // Accepts "d1xd2x...xdk" with di >= 2, or "1" for the trivial group.
  static Group parse(const std::string& spec, long long order_budget = 1 << 20);
  explicit Group(std::vector<long long> factors, long long order_budget = 1 << 20);

  long long order() const { return n_; }
  long long exponent() const { return exponent_; }
  const std::vector<long long>& factors() const { return factors_; }
  std::string spec_string() const;

  // Invariant-factor form d1 | d2 | ... | dr (ascending); empty product is
  // {1}.  Two factor lists present isomorphic groups iff these agree.
  std::vector<long long> canonical_factors() const;
  std::string canonical_spec() const;

  std::vector<long long> coords(long long x) const;
  long long from_coords(const std::vector<long long>& c) const;

  long long add(long long x, long long y) const {
    if (!add_table_.empty()) return add_table_[x * n_ + y];
    return add_slow(x, y);
  }
  long long neg(long long x) const { return neg_table_[x]; }
  long long sub(long long x, long long y) const { return add(x, neg(y)); }
  long long scalar_mul(long long k, long long x) const;
  long long element_order(long long x) const;

  // chi_a(x) = exp(2*pi*i*pairing(a,x)/exponent); value in [0, exponent).
  long long pairing(long long a, long long x) const;
  long long character_order(long long a) const { return element_order(a); }

 private:
  long long add_slow(long long x, long long y) const;

  std::vector<long long> factors_, stride_;
  long long n_ = 1, exponent_ = 1;
  std::vector<long long> weight_;  // exponent / d_j
  std::vector<int> add_table_;     // built when n <= 1024
  std::vector<int> neg_table_;
};

struct Subgroup {
  std::vector<long long> elements;  // sorted, always contains 0
  long long size() const { return (long long)elements.size(); }
};

// Subgroup generated by `gens`.
Subgroup closure(const Group& g, const std::vector<long long>& gens);
bool is_subgroup(const Group& g, const std::vector<long long>& elements);

// All subgroups, sorted by (size, lexicographic element list).
std::vector<Subgroup> enumerate_subgroups(const Group& g, long long max_count = 200000);

// Size of the largest proper subgroup: n / (least prime factor of n); 1 for
// the trivial group.  Cross-checked against enumerate_subgroups in tests.
long long defect(const Group& g);
Rational lambda_ratio(const Group& g);  // defect / n

struct QuotientMap {
  Group quotient;                 // canonical invariant-factor presentation
  std::vector<long long> image;   // image[x] = index of x+H in the quotient
};
// Quotient G/H with an explicit projection; computed via Smith normal form
// of the relation matrix, kernel is verified to be exactly H.
QuotientMap quotient(const Group& g, const Subgroup& h);

// Homomorphisms G -> Z/p, represented by coefficient vectors:
// psi(x) = sum_j c_j x_j  (mod p), with c_j = 0 whenever p does not divide d_j.
struct HomZp {
  long long p = 0;
  std::vector<long long> coeffs;
};
std::vector<HomZp> homs_to_Zp(const Group& g, long long p);  // includes the zero hom
long long eval_hom(const Group& g, const HomZp& psi, long long x);

long long smallest_prime_factor(long long n);  // n = 1 -> 1
std::vector<std::pair<long long, long long>> factorize(long long n);

}  // namespace sumfree
