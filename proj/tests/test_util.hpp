#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "sumfree/group.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree::testutil {

inline std::vector<long long> random_subset(const Group& g, std::mt19937_64& rng,
                                            double density = 0.5) {
  std::vector<long long> out;
  std::uniform_real_distribution<double> u(0, 1);
  for (long long x = 0; x < g.order(); ++x)
    if (u(rng) < density) out.push_back(x);
  return out;
}

// Greedy random maximal-ish sum-free set: shuffled candidate order, keep an
// element whenever the set stays sum-free.
inline std::vector<long long> random_sum_free(const Group& g, std::mt19937_64& rng,
                                              double keep_probability = 1.0) {
  std::vector<long long> perm;
  for (long long x = 1; x < g.order(); ++x) perm.push_back(x);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<long long> a;
  for (long long x : perm) {
    if (u(rng) > keep_probability) continue;
    a.push_back(x);
    if (schur_triples(g, a) != 0) a.pop_back();
  }
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace sumfree::testutil
