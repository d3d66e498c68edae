#pragma once

#include <complex>
#include <vector>

#include "sumfree/group.hpp"

namespace sumfree {

// fhat[a] = sum_{x in A} chi_a(x); naive O(n*|A|) evaluation off the exact
// integer character pairing, double precision.
std::vector<std::complex<double>> dft(const Group& g, const std::vector<long long>& set);

// Schur triple count through the transform: n^{-1} sum_a fhat(a)|fhat(a)|^2
// is real and integral for indicator functions; returns the rounded value and
// (optionally) the imaginary residual magnitude before rounding.
long long schur_count_via_dft(const Group& g, const std::vector<long long>& set,
                              double* residual = nullptr);

// max_a |fhat(a)| over nontrivial a, and Parseval residual
// | sum_a |fhat(a)|^2 - n|A| | / (n|A|).
double parseval_relative_residual(const Group& g, const std::vector<long long>& set,
                                  const std::vector<std::complex<double>>& fhat);

}  // namespace sumfree
