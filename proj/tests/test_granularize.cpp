#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <string>

#include "sumfree/fourier.hpp"
#include "sumfree/granularize.hpp"
#include "sumfree/sumfree.hpp"
#include "test_util.hpp"

using namespace sumfree;

namespace {

// Checks that grains (and leftovers) tile G exactly once.
void check_partition(const Group& g, const GrainStructure& s) {
  std::vector<int> hits((std::size_t)g.order(), 0);
  for (const auto& grain : s.grains)
    for (long long x : grain) hits[(std::size_t)x]++;
  for (const auto& left : s.leftovers)
    for (long long x : left) hits[(std::size_t)x]++;
  for (long long x = 0; x < g.order(); ++x) CHECK(hits[(std::size_t)x] == 1);
}

// Residual of the smoothing identity: max over all characters of
// |Ahat(c) * (1 - Phat(c)/|P|)|.
double smoothing_residual(const Group& g, const std::vector<long long>& a,
                          const std::vector<long long>& p) {
  auto fa = dft(g, a);
  auto fp = dft(g, p);
  double worst = 0;
  for (long long c = 0; c < g.order(); ++c) {
    std::complex<double> gval = fp[(std::size_t)c] / (double)p.size();
    worst = std::max(worst, std::abs(fa[(std::size_t)c] * (1.0 - gval)));
  }
  return worst;
}

}  // namespace

TEST_CASE("coset_grains lists the cosets by least representative") {
  Group c6 = Group::parse("6");
  auto s = coset_grains(c6, closure(c6, {2}));
  CHECK(s.kind == GrainKind::coset);
  REQUIRE(s.grains.size() == 2);
  CHECK(s.grains[0] == std::vector<long long>{0, 2, 4});
  CHECK(s.grains[1] == std::vector<long long>{1, 3, 5});
  CHECK(s.leftovers.empty());
  check_partition(c6, s);

  CHECK_THROWS_AS((void)coset_grains(c6, Subgroup{{0, 1, 3}}), sf_error);
}

TEST_CASE("progression_grains walks each <d>-coset from its least element") {
  Group c10 = Group::parse("10");

  auto s1 = progression_grains(c10, 1, 3);
  REQUIRE(s1.grains.size() == 3);
  CHECK(s1.grains[0] == std::vector<long long>{0, 1, 2});
  CHECK(s1.grains[1] == std::vector<long long>{3, 4, 5});
  CHECK(s1.grains[2] == std::vector<long long>{6, 7, 8});
  REQUIRE(s1.leftovers.size() == 1);
  CHECK(s1.leftovers[0] == std::vector<long long>{9});
  check_partition(c10, s1);

  // d = 3 walks 0,3,6,9,2,5,8,1,4,7.
  auto s3 = progression_grains(c10, 3, 3);
  REQUIRE(s3.grains.size() == 3);
  CHECK(s3.grains[0] == std::vector<long long>{0, 3, 6});
  CHECK(s3.grains[1] == std::vector<long long>{2, 5, 9});
  CHECK(s3.grains[2] == std::vector<long long>{1, 4, 8});
  REQUIRE(s3.leftovers.size() == 1);
  CHECK(s3.leftovers[0] == std::vector<long long>{7});
  check_partition(c10, s3);

  // In C_2 x C_6 the element (1,0) has order 2: every coset splits into one
  // grain of two and no leftover.
  Group g26 = Group::parse("2x6");
  auto s26 = progression_grains(g26, 6, 2);
  CHECK(s26.grains.size() == 6);
  CHECK(s26.leftovers.empty());
  for (long long j = 0; j < 6; ++j)
    CHECK(s26.grains[(std::size_t)j] == std::vector<long long>{j, j + 6});
  check_partition(g26, s26);

  CHECK_THROWS_AS((void)progression_grains(c10, 10, 2), sf_error);
  CHECK_THROWS_AS((void)progression_grains(c10, 1, 0), sf_error);
}

TEST_CASE("grain partitions tile the group for many (G, d, L)") {
  std::mt19937_64 rng(7);
  for (const char* spec : {"12", "15", "2x8", "3x9", "2x2x6", "24"}) {
    Group g = Group::parse(spec);
    for (long long d = 0; d < g.order(); ++d) {
      for (long long L : {1, 2, 3, 5}) {
        auto s = progression_grains(g, d, L);
        check_partition(g, s);
        for (const auto& grain : s.grains)
          CHECK((long long)grain.size() == L);
        for (const auto& left : s.leftovers) {
          CHECK((long long)left.size() >= 1);
          CHECK((long long)left.size() < L);
        }
        long long m = g.element_order(d);
        CHECK((long long)s.grains.size() == (g.order() / m) * (m / L));
      }
    }
    for (int rep = 0; rep < 5; ++rep) {
      auto gens = testutil::random_subset(g, rng, 0.2);
      auto s = coset_grains(g, closure(g, gens));
      check_partition(g, s);
      for (const auto& grain : s.grains)
        CHECK((long long)grain.size() == s.subgroup.size());
    }
  }
}

TEST_CASE("large_spectrum on the odd coset of C_6") {
  Group c6 = Group::parse("6");
  CHECK(large_spectrum(c6, {1, 3, 5}, 1.0) == std::vector<long long>{3});
  CHECK(large_spectrum(c6, {}, 1.0).empty());
  CHECK(large_spectrum(c6, {1, 3, 5}, 7.0).empty());
  CHECK_THROWS_AS((void)large_spectrum(c6, {1}, 0.0), sf_error);

  // Threshold monotonicity and the trivial character's exclusion.
  std::mt19937_64 rng(11);
  for (const char* spec : {"9", "2x6", "20"}) {
    Group g = Group::parse(spec);
    for (int rep = 0; rep < 20; ++rep) {
      auto a = testutil::random_subset(g, rng, 0.5);
      auto r1 = large_spectrum(g, a, 0.5);
      auto r2 = large_spectrum(g, a, 2.0);
      for (long long c : r2) {
        CHECK(c != 0);
        CHECK(std::binary_search(r1.begin(), r1.end(), c));
      }
    }
  }
}

TEST_CASE("annihilator is the joint kernel and satisfies duality") {
  Group c6 = Group::parse("6");
  CHECK(annihilator(c6, {3}).elements == std::vector<long long>{0, 2, 4});
  CHECK(annihilator(c6, {}).size() == 6);
  CHECK(annihilator(c6, {0, 1, 2, 3, 4, 5}).elements ==
        std::vector<long long>{0});

  // |<R>| * |annihilator(R)| = n, by duality (characters add like elements).
  std::mt19937_64 rng(23);
  for (const char* spec : {"8", "12", "2x2x3", "3x6"}) {
    Group g = Group::parse(spec);
    for (int rep = 0; rep < 30; ++rep) {
      auto r = testutil::random_subset(g, rng, 0.3);
      auto ann = annihilator(g, r);
      CHECK(is_subgroup(g, ann.elements));
      CHECK(closure(g, r).size() * ann.size() == g.order());
    }
  }
}

TEST_CASE("find_direction scans in canonical order") {
  Group c6 = Group::parse("6");
  Subgroup evens{{0, 2, 4}};
  const double pi = std::acos(-1.0);

  CHECK(find_direction(c6, evens, {{3, pi}}) == 1);
  CHECK(find_direction(c6, evens, {}) == 1);

  Group c7 = Group::parse("7");
  Subgroup trivial{{0}};
  CHECK(find_direction(c7, trivial, {}) == 1);
  // A full-order character with a tiny arc excludes every nonzero element.
  try {
    (void)find_direction(c7, trivial, {{1, 1e-3}});
    CHECK(false);
  } catch (const sf_error& e) {
    CHECK(e.code() == errc::not_found);
    CHECK(std::string(e.what()).find("near-miss") != std::string::npos);
  }
  // No candidates at all when G1 is everything.
  Subgroup all{{0, 1, 2, 3, 4, 5, 6}};
  try {
    (void)find_direction(c7, all, {});
    CHECK(false);
  } catch (const sf_error& e) {
    CHECK(e.code() == errc::not_found);
  }

  CHECK_THROWS_AS((void)find_direction(c6, Subgroup{{0, 1}}, {}), sf_error);
  CHECK_THROWS_AS((void)find_direction(c6, evens, {{9, 1.0}}), sf_error);
}

TEST_CASE("granularize: coset type on the odd coset of C_6") {
  Group c6 = Group::parse("6");
  auto res = granularize(c6, {1, 3, 5}, 5, 3, Rational(1, 4));
  CHECK(res.structure.kind == GrainKind::coset);
  CHECK(res.p == std::vector<long long>{0, 2, 4});
  CHECK(res.a_prime == std::vector<long long>{1, 3, 5});
  CHECK(res.removed == 0);
  CHECK(res.schur_a_prime == 0);
  CHECK(res.delta == Rational(1, 16777216));
  CHECK_FALSE(res.premise_71_holds);
  CHECK(smoothing_residual(c6, {1, 3, 5}, res.p) <=
        (double)Rational(res.delta * 6) + 1e-6);
}

TEST_CASE("granularize: empty set, trivial result") {
  Group c6 = Group::parse("6");
  auto res = granularize(c6, {}, 2, 1, Rational(1, 4));
  CHECK(res.a_prime.empty());
  CHECK(res.removed == 0);
  CHECK(res.schur_a_prime == 0);
  CHECK(res.structure.kind == GrainKind::coset);
  CHECK((long long)res.p.size() == 6);  // G1 = G when the spectrum is empty
}

TEST_CASE("granularize: progression attempt reports its failure deterministically") {
  Group c7 = Group::parse("7");
  // L' = 8 exceeds |G| so the coset path is impossible; the required order
  // ceil(8L/eps) = 64 exceeds the exponent, so no direction exists.
  try {
    (void)granularize(c7, {3, 4}, 2, 8, Rational(1, 4));
    CHECK(false);
  } catch (const sf_error& e) {
    CHECK(e.code() == errc::search_failure);
    CHECK(std::string(e.what()).find("order >= 64") != std::string::npos);
  }

  // Here directions of sufficient order exist but the arc constraints are
  // unsatisfiable; the error carries the best near-miss instead.
  Group c37 = Group::parse("37");
  try {
    (void)granularize(c37, {15, 16, 17}, 1, 38, Rational(2, 5));
    CHECK(false);
  } catch (const sf_error& e) {
    CHECK(e.code() == errc::search_failure);
    CHECK(std::string(e.what()).find("near-miss") != std::string::npos);
  }
}

TEST_CASE("granularize: premise and argument errors") {
  Group c6 = Group::parse("6");
  CHECK_THROWS_AS((void)granularize(c6, {1, 2}, 2, 2, Rational(1, 4)),
                  sf_error);  // 1 + 1 = 2: not sum-free
  CHECK_THROWS_AS((void)granularize(c6, {1}, 2, 2, Rational(1, 2)), sf_error);
  CHECK_THROWS_AS((void)granularize(c6, {1}, 2, 2, Rational(0)), sf_error);
  CHECK_THROWS_AS((void)granularize(c6, {1}, 0, 2, Rational(1, 4)), sf_error);
  CHECK_THROWS_AS((void)granularize(c6, {1}, 2, 0, Rational(1, 4)), sf_error);
}

TEST_CASE("granularize: success properties over random sum-free sets") {
  std::mt19937_64 rng(2026);
  const Rational epss[3] = {Rational(1, 5), Rational(1, 4), Rational(2, 5)};
  int successes = 0;
  for (const char* spec :
       {"24", "36", "50", "2x18", "63", "5x5", "98", "11x11", "2x2x2x2"}) {
    Group g = Group::parse(spec);
    long long n = g.order();
    for (int rep = 0; rep < 12; ++rep) {
      auto a = testutil::random_sum_free(g, rng, 0.8);
      const Rational& eps = epss[rep % 3];
      Rational delta = eps * eps * eps * eps / 65536;

      // Choose L' so the coset path is taken: the annihilator of the large
      // spectrum always works, and L' = 1 is the universal fallback.
      auto r = large_spectrum(g, a, (double)Rational(delta * n / 2));
      auto g1 = annihilator(g, r);
      long long lp = (rep % 2 == 0) ? 1 : g1.size();

      auto res = granularize(g, a, 4, lp, eps);
      ++successes;
      CHECK(res.structure.kind == GrainKind::coset);
      CHECK(Rational(res.removed) <= eps * n / 4);
      CHECK(Rational(res.schur_a_prime) <= eps * n * n / 4);
      CHECK(smoothing_residual(g, a, res.p) <=
            (double)Rational(res.delta * n) + 1e-6);

      // A' is an exact union of G1-cosets containing >= eps|G1|/4 points.
      std::set<long long> ap(res.a_prime.begin(), res.a_prime.end());
      std::set<long long> aset(a.begin(), a.end());
      for (const auto& grain : coset_grains(g, res.structure.subgroup).grains) {
        long long inside = 0;
        for (long long x : grain) inside += aset.count(x);
        bool kept = ap.count(grain[0]) != 0;
        for (long long x : grain) CHECK(ap.count(x) == (kept ? 1u : 0u));
        CHECK(kept == (Rational(inside) * 4 >= eps * res.structure.subgroup.size()));
      }
    }
  }
  CHECK(successes == 9 * 12);
}

TEST_CASE("granularize is deterministic") {
  Group g = Group::parse("2x12");
  std::mt19937_64 rng(5);
  auto a = testutil::random_sum_free(g, rng);
  auto r1 = granularize(g, a, 3, 1, Rational(1, 3));
  auto r2 = granularize(g, a, 3, 1, Rational(1, 3));
  CHECK(r1.a_prime == r2.a_prime);
  CHECK(r1.p == r2.p);
  CHECK(r1.removed == r2.removed);
}

TEST_CASE("family_bounds formulas and flags") {
  auto fb = family_bounds(100, 10, Rational(1, 100));
  CHECK(fb.log2_granular == 30);
  CHECK(fb.granular_bound == Int(1) << 30);
  CHECK(fb.granular_exact);
  CHECK(fb.granular_applicable);

  auto fb2 = family_bounds(10000, 10, Rational(1, 100));
  CHECK(fb2.log2_subset == 1000);
  CHECK(fb2.subset_bound == Int(1) << 1000);
  CHECK(fb2.subset_exact);
  // rho = 1/100 violates the proof's sufficient condition: sqrt(rho) = 1/10
  // but log2(100 e) / 10 > 1/2.
  CHECK_FALSE(fb2.subset_applicable);

  auto fb3 = family_bounds(1000, 1000, Rational(1, 2000));
  CHECK(fb3.subset_applicable);
  CHECK_FALSE(fb3.granular_applicable);  // L^2 > n
  CHECK_FALSE(fb3.subset_exact);
  double lg = (double)fb3.log2_subset;
  double target = 1000.0 * std::sqrt(1.0 / 2000.0);
  CHECK(lg >= target);
  CHECK(lg <= target + 1e-9);

  auto fb4 = family_bounds(10, 4, Rational(0));
  CHECK(fb4.log2_granular == Rational(30, 4));
  CHECK_FALSE(fb4.granular_exact);
  CHECK(fb4.granular_bound == 256);
  CHECK(fb4.subset_bound == 1);
  CHECK(fb4.subset_exact);
  CHECK(fb4.subset_applicable);

  CHECK_THROWS_AS((void)family_bounds(0, 1, Rational(1, 4)), sf_error);
  CHECK_THROWS_AS((void)family_bounds(4, 1, Rational(-1, 4)), sf_error);
}

TEST_CASE("family_bounds: exhaustive coset-type census of C_16 at L = 4") {
  Group g = Group::parse("16");
  std::set<std::vector<long long>> seen;
  for (const auto& h : enumerate_subgroups(g)) {
    if (h.size() < 4) continue;
    auto grains = coset_grains(g, h).grains;
    long long k = (long long)grains.size();
    for (unsigned long long mask = 0; mask < (1ull << k); ++mask) {
      std::vector<long long> u;
      for (long long i = 0; i < k; ++i)
        if (mask >> i & 1)
          u.insert(u.end(), grains[(std::size_t)i].begin(),
                   grains[(std::size_t)i].end());
      std::sort(u.begin(), u.end());
      seen.insert(u);
    }
  }
  // Subgroups of size >= 4 in C_16 are nested, so every union is already a
  // union of cosets of the size-4 subgroup: 2^4 distinct sets.
  CHECK((long long)seen.size() == 16);
  auto fb = family_bounds(16, 4, Rational(1, 100));
  CHECK(Int((long long)seen.size()) <= fb.granular_bound);
  CHECK(fb.granular_bound == 1 << 12);
}

TEST_CASE("calculus bound: prod max(tau, x_i) <= tau^K") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> utau(std::exp(1.0 / std::exp(1.0)), 5.0);
  std::uniform_real_distribution<double> ux(1.0, 5.0);
  std::uniform_int_distribution<int> uk(1, 8);
  for (int rep = 0; rep < 10000; ++rep) {
    double tau = utau(rng);
    int k = uk(rng);
    double sum = 0, lhs_log = 0;
    for (int i = 0; i < k; ++i) {
      double x = ux(rng);
      sum += x;
      lhs_log += std::log(std::max(tau, x));
    }
    double K = sum;  // the tightest admissible K
    CHECK(lhs_log <= K * std::log(tau) + 1e-9);
  }
}
