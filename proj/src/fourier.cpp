#include "sumfree/fourier.hpp"

#include <cmath>

namespace sumfree {

std::vector<std::complex<double>> dft(const Group& g, const std::vector<long long>& set) {
  long long n = g.order(), e = g.exponent();
  std::vector<std::complex<double>> roots(e);
  for (long long t = 0; t < e; ++t) {
    double ang = 2.0 * M_PI * (double)t / (double)e;
    roots[t] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> fhat(n);
  for (long long a = 0; a < n; ++a) {
    std::complex<double> acc = 0;
    for (long long x : set) acc += roots[g.pairing(a, x)];
    fhat[a] = acc;
  }
  return fhat;
}

long long schur_count_via_dft(const Group& g, const std::vector<long long>& set,
                              double* residual) {
  auto fhat = dft(g, set);
  std::complex<double> acc = 0;
  for (auto& v : fhat) acc += v * std::norm(v);
  acc /= (double)g.order();
  if (residual) *residual = std::abs(acc.imag());
  return std::llround(acc.real());
}

double parseval_relative_residual(const Group& g, const std::vector<long long>& set,
                                  const std::vector<std::complex<double>>& fhat) {
  if (set.empty()) return 0.0;
  double sum = 0;
  for (auto& v : fhat) sum += std::norm(v);
  double expect = (double)g.order() * (double)set.size();
  return std::abs(sum - expect) / expect;
}

}  // namespace sumfree
