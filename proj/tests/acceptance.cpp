// Acceptance battery: ten end-to-end criteria, one verdict line each.
// Exit code 0 iff every criterion passes.  Criteria with a stated wall-time
// budget fail when they run over it (the work is never cut short).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sumfree/fourier.hpp"
#include "sumfree/granularize.hpp"
#include "sumfree/group.hpp"
#include "sumfree/lp.hpp"
#include "sumfree/report.hpp"
#include "sumfree/structure.hpp"
#include "sumfree/sumfree.hpp"

using namespace sumfree;

namespace {

double to_dbl(const Rational& r) { return r.convert_to<double>(); }

// --- group census ------------------------------------------------------------

void factor_lists(long long n, long long min_factor, std::vector<long long>& cur,
                  std::vector<std::vector<long long>>& out) {
  if (n == 1) {
    if (!cur.empty()) out.push_back(cur);
    return;
  }
  for (long long d = min_factor; d <= n; ++d)
    if (n % d == 0) {
      cur.push_back(d);
      factor_lists(n / d, d, cur, out);
      cur.pop_back();
    }
}

// Every isomorphism class of abelian group of order 2..max_n, once.
std::vector<Group> census(long long max_n) {
  std::vector<Group> groups;
  std::set<std::string> seen;
  for (long long n = 2; n <= max_n; ++n) {
    std::vector<std::vector<long long>> lists;
    std::vector<long long> cur;
    factor_lists(n, 2, cur, lists);
    for (const auto& f : lists) {
      Group g(f);
      if (seen.insert(g.canonical_spec()).second) groups.push_back(std::move(g));
    }
  }
  return groups;
}

// --- sum-free enumeration ------------------------------------------------------

// Visits every sum-free subset exactly once (the empty set included).
template <typename Fn>
void for_each_sum_free(const Group& g, Fn&& fn) {
  const long long n = g.order();
  std::vector<long long> cur;
  std::vector<int> pair_sums((std::size_t)n, 0);  // ordered pairs of cur
  std::vector<int> member((std::size_t)n, 0);
  std::function<void(long long)> rec = [&](long long next) {
    fn(cur);
    for (long long x = next; x < n; ++x) {
      if (pair_sums[(std::size_t)x]) continue;  // x is already a pair sum
      long long dx = g.add(x, x);
      if (member[(std::size_t)dx] || dx == x) continue;
      bool ok = true;
      for (long long a : cur) {
        long long s = g.add(a, x);
        if (member[(std::size_t)s] || s == x) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (long long a : cur) pair_sums[(std::size_t)g.add(a, x)] += 2;
      pair_sums[(std::size_t)dx] += 1;
      member[(std::size_t)x] = 1;
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
      member[(std::size_t)x] = 0;
      for (long long a : cur) pair_sums[(std::size_t)g.add(a, x)] -= 2;
      pair_sums[(std::size_t)dx] -= 1;
    }
  };
  rec(1);
}

std::vector<long long> mask_to_set(unsigned mask, long long n) {
  std::vector<long long> s;
  for (long long x = 0; x < n; ++x)
    if (mask & (1u << x)) s.push_back(x);
  return s;
}

// Residual of the smoothing identity: max over characters of
// |Ahat(c) * (1 - Phat(c)/|P|)|.
double smoothing_residual(const Group& g, const std::vector<long long>& a,
                          const std::vector<long long>& p) {
  auto fa = dft(g, a);
  auto fp = dft(g, p);
  double worst = 0;
  for (long long c = 0; c < g.order(); ++c) {
    std::complex<double> gv = fp[(std::size_t)c] / (double)p.size();
    worst = std::max(worst, std::abs(fa[(std::size_t)c] * (1.0 - gv)));
  }
  return worst;
}

// Exact separable minimum of sum beta_j cos(pi (2j+parity)/q) over
// 0 <= beta <= 1/2, sum beta = mass (long double reference oracle).
long double box_lp_min(long long q, int parity, long double mass) {
  std::vector<long double> c((std::size_t)q);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (long long j = 0; j < q; ++j)
    c[(std::size_t)j] = cosl(pi * (long double)(2 * j + parity) / (long double)q);
  std::sort(c.begin(), c.end());
  long double total = 0, placed = 0;
  for (long long j = 0; j < q; ++j) {
    long double take;
    if (c[(std::size_t)j] < 0)
      take = 0.5L;
    else if (placed < mass)
      take = std::min(0.5L, mass - placed);
    else
      break;
    total += take * c[(std::size_t)j];
    placed += take;
  }
  return total;
}

// --- harness -------------------------------------------------------------------

int g_index = 0;
int g_passed = 0;

void run(const std::string& label, double budget_seconds,
         const std::function<bool(std::string&)>& body) {
  ++g_index;
  std::string note;
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (ok && budget_seconds > 0 && secs > budget_seconds) {
    ok = false;
    note += " [over the " + std::to_string((int)budget_seconds) + "s budget]";
  }
  if (ok) ++g_passed;
  std::printf("%2d/10  %s  %8.2fs  %s%s%s\n", g_index, ok ? "PASS" : "FAIL", secs,
              label.c_str(), note.empty() ? "" : " — ", note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  // 1. The extremal census: exact maximum equals the density formula.
  run("mu equals nu*n for every abelian group of order 2..40", 600.0,
      [](std::string& note) {
        auto groups = census(40);
        long long bad = 0;
        for (const auto& g : groups)
          if (Rational(mu_exact(g).mu_n) != nu(g) * g.order()) ++bad;
        note = std::to_string(groups.size()) + " groups, " +
               std::to_string(bad) + " mismatches";
        return groups.size() == 67 && bad == 0;
      });

  // 2. Exact counting against the exponential filter.
  run("sum-free counts match the 2^n filter on every group of order <= 16",
      60.0, [](std::string& note) {
        auto groups = census(16);
        long long bad = 0;
        for (const auto& g : groups)
          if (count_sf(g) != count_sf_naive(g)) ++bad;
        bool pinned = count_sf(Group::parse("2")) == 2 &&
                      count_sf(Group::parse("3")) == 3 &&
                      count_sf(Group::parse("4")) == 5 &&
                      count_sf(Group::parse("5")) == 7;
        note = std::to_string(groups.size()) + " groups, " +
               std::to_string(bad) + " mismatches";
        return groups.size() == 24 && bad == 0 && pinned;
      });

  // 3. Counting trend on even cyclic orders: the count is at least 2^{mu n}
  //    (equivalently sigma >= mu), with the main-term ratio reported.
  run("even cyclic counting trend for n = 2..32", 0.0, [](std::string& note) {
    bool ok = true;
    double ratio_min = 1e300, ratio_max = 0;
    for (long long n = 2; n <= 32; n += 2) {
      Group g = Group::parse(std::to_string(n));
      Int cnt = count_sf(g);
      long long mu_n = mu_exact(g).mu_n;
      ok = ok && cnt >= (Int(1) << mu_n);
      ok = ok && sigma_double(g, cnt) >= (double)mu_n / (double)n - 1e-12;
      double ratio = Rational(cnt, main_term_typeIp(g)).convert_to<double>();
      ratio_min = std::min(ratio_min, ratio);
      ratio_max = std::max(ratio_max, ratio);
      ok = ok && ratio > 0;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "count/main-term in [%.3f, %.3f]", ratio_min,
                  ratio_max);
    note = buf;
    return ok;
  });

  // 4. The popular-sums inequality, exhaustively and at random.
  run("popular-sums inequality: exhaustive <= 7 plus 10^5 random <= 16", 300.0,
      [](std::string& note) {
        long long checks = 0, violations = 0;
        for (const char* spec : {"2", "3", "4", "2x2", "5", "6", "7", "2x3"}) {
          Group g = Group::parse(spec);
          long long n = g.order();
          for (unsigned am = 0; am < (1u << n); ++am) {
            auto a = mask_to_set(am, n);
            for (unsigned bm = 0; bm < (1u << n); ++bm) {
              auto b = mask_to_set(bm, n);
              long long tmax = std::min(a.size(), b.size());
              for (long long t = 0; t <= tmax; ++t) {
                ++checks;
                if (!verify_kp(g, a, b, t).ok) ++violations;
              }
            }
          }
        }
        auto pool = census(16);
        std::mt19937_64 rng(20260825);
        for (int i = 0; i < 100000; ++i) {
          const Group& g = pool[rng() % pool.size()];
          long long n = g.order();
          std::vector<long long> a, b;
          for (long long x = 0; x < n; ++x) {
            if (rng() & 1) a.push_back(x);
            if (rng() & 1) b.push_back(x);
          }
          long long tmax = std::min(a.size(), b.size());
          long long t = (long long)(rng() % (unsigned long long)(tmax + 1));
          ++checks;
          if (!verify_kp(g, a, b, t).ok) ++violations;
        }
        note = std::to_string(checks) + " checks, " +
               std::to_string(violations) + " violations";
        return violations == 0;
      });

  // 5. Replay of the shipped dual certificates.
  run("certificate replay: every stem certifies at or above its claim", 120.0,
      [](std::string& note) {
        ojson r = report_repro("certificates", SF_DATA_DIR, 0);
        note = r["certified"].dump() + " of " + r["total"].dump() +
               " stems certified";
        return r["pass"].get<bool>() && r["total"].get<long long>() == 22 &&
               r["certified"].get<long long>() == 22;
      });

  // 6. The closed-form sweep reproduces the three exception lists verbatim.
  run("closed-form sweep to q = 1000 yields the exception lists", 60.0,
      [](std::string& note) {
        SweepResult s = sweep_closed_form(1000);
        bool ok = s.low == std::vector<long long>{7, 13, 19} &&
                  s.mid == std::vector<long long>{7, 13, 19, 31} &&
                  s.high == std::vector<long long>{7, 13, 19, 31, 37, 43, 49,
                                                   61, 67, 73};
        note = std::to_string(s.low.size()) + "/" + std::to_string(s.mid.size()) +
               "/" + std::to_string(s.high.size()) + " exceptional q";
        return ok;
      });

  // 7. Closed forms for E(0) against the separable box-program oracle.
  run("E(0) closed forms match the box-program oracle to 1e-9 (q <= 100)", 0.0,
      [](std::string& note) {
        double worst = 0;
        for (long long q = 7; q <= 100; q += 6) {
          long long k = (q - 1) / 6;
          for (int parity : {0, 1}) {
            Interval e0 = closed_form_E0(q, parity == 1, 96);
            long double oracle = box_lp_min(q, parity, 2.0L * (long double)k);
            worst = std::max(worst,
                             std::abs(to_dbl(e0.mid()) - (double)oracle));
          }
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "worst deviation %.2e", worst);
        note = buf;
        return worst < 1e-9;
      });

  // 8. Granularization posts on random sum-free sets.
  run("granularization posts on 100 random sum-free sets (orders <= 200)", 0.0,
      [](std::string& note) {
        const char* specs[] = {"24",  "36",    "50",   "2x18", "63",  "98",
                               "5x5", "11x11", "4x25", "27x7", "200", "121"};
        const Rational epss[3] = {Rational(1, 5), Rational(1, 4),
                                  Rational(2, 5)};
        std::mt19937_64 rng(20260825);
        int successes = 0, post_failures = 0;
        for (int i = 0; i < 100; ++i) {
          Group g = Group::parse(specs[i % 12]);
          long long n = g.order();
          std::vector<long long> perm;
          for (long long x = 1; x < n; ++x) perm.push_back(x);
          std::shuffle(perm.begin(), perm.end(), rng);
          std::vector<long long> a;
          for (long long x : perm) {
            a.push_back(x);
            if (schur_triples(g, a) != 0) a.pop_back();
          }
          std::sort(a.begin(), a.end());
          const Rational& eps = epss[i % 3];
          auto res = granularize(g, a, 4, 1, eps);
          ++successes;
          std::set<long long> ap(res.a_prime.begin(), res.a_prime.end());
          long long removed = 0;
          for (long long x : a) removed += ap.count(x) ? 0 : 1;
          bool ok = removed == res.removed &&
                    Rational(removed) <= eps * n / 4 &&
                    schur_triples(g, res.a_prime) == res.schur_a_prime &&
                    Rational(res.schur_a_prime) <= eps * n * n / 4 &&
                    smoothing_residual(g, a, res.p) <=
                        to_dbl(res.delta * n) + 1e-6;
          if (!ok) ++post_failures;
        }
        note = std::to_string(successes) + " successful runs, " +
               std::to_string(post_failures) + " post failures";
        return successes == 100 && post_failures == 0;
      });

  // 9. Structural covers: stabilizer quotients, the dilate classification in
  //    Z/p, and the mod-p window for type I extremal sets.
  run("covers: quotients <= 16, dilates p in {5,11,17,23}, type I windows <= 40",
      0.0, [](std::string& note) {
        long long quotient_cases = 0, bad = 0;
        for (const auto& g : census(16)) {
          long long n = g.order();
          Int enumerated = 0;
          for_each_sum_free(g, [&](const std::vector<long long>& a) {
            enumerated += 1;
            if (3 * (long long)a.size() < n + 3) return;
            ++quotient_cases;
            KneserCover cov =
                kneser_cover(g, a, Rational(3 * (long long)a.size() - n, 3));
            long long h = (long long)cov.stabilizer.size();
            bool ok = h >= 3 * (long long)a.size() - n;
            ok = ok && is_sum_free(cov.map.quotient, cov.image);
            std::set<long long> img(cov.image.begin(), cov.image.end());
            for (long long x : a)
              ok = ok && img.count(cov.map.image[(std::size_t)x]) != 0;
            if (!ok) ++bad;
          });
          if (enumerated != count_sf(g)) ++bad;  // enumerator cross-check
        }

        long long dilate_cases = 0;
        for (long long p : {5, 11, 17, 23}) {
          Group zp = Group::parse(std::to_string(p));
          long long k = (p - 2) / 3;
          std::vector<std::vector<long long>> maxima;
          for_each_sum_free(zp, [&](const std::vector<long long>& b) {
            if ((long long)b.size() == k + 1) maxima.push_back(b);
          });
          if ((long long)maxima.size() != (p - 1) / 2) ++bad;
          for (const auto& b : maxima) {
            ++dilate_cases;
            long long c = vosper_check(zp, b);
            std::vector<long long> dilated;
            for (long long j = k + 1; j <= 2 * k + 1; ++j)
              dilated.push_back((c * j) % p);
            std::sort(dilated.begin(), dilated.end());
            if (dilated != b) ++bad;
          }
        }

        long long window_cases = 0;
        for (const auto& g : census(40)) {
          Classification cls = classify(g);
          if (cls.type != GroupType::I) continue;
          ++window_cases;
          auto a = construct_extremal(g);
          HomZp psi = typeI_cover(g, a);
          long long p = cls.parameter, k = (p - 2) / 3;
          bool ok = psi.p == p;
          for (long long x : a) {
            long long v = eval_hom(g, psi, x);
            ok = ok && v >= k + 1 && v <= 2 * k + 1;
          }
          if (!ok) ++bad;
        }

        note = std::to_string(quotient_cases) + " quotient / " +
               std::to_string(dilate_cases) + " dilate / " +
               std::to_string(window_cases) + " window cases, " +
               std::to_string(bad) + " failures";
        return quotient_cases > 0 && dilate_cases > 0 && window_cases > 0 &&
               bad == 0;
      });

  // 10. Transform consistency: Schur counts through the DFT and Parseval.
  run("transform consistency on 10^4 random sets (orders <= 64)", 0.0,
      [](std::string& note) {
        const char* specs[] = {"64", "8x8",  "4x4x4", "2x32", "63",
                               "7x9", "60",  "49",    "36",   "2x2x2x2x2x2"};
        std::mt19937_64 rng(20260825);
        long long bad = 0;
        double worst_res = 0, worst_par = 0;
        for (const char* spec : specs) {
          Group g = Group::parse(spec);
          long long n = g.order();
          for (int i = 0; i < 1000; ++i) {
            std::vector<long long> a;
            for (long long x = 0; x < n; ++x)
              if (rng() & 1) a.push_back(x);
            if (a.empty()) a.push_back(1 + (long long)(rng() % (n - 1)));
            double resid = 0;
            if (schur_count_via_dft(g, a, &resid) != schur_triples(g, a)) ++bad;
            worst_res = std::max(worst_res, resid);
            double par = parseval_relative_residual(g, a, dft(g, a));
            worst_par = std::max(worst_par, par);
            if (par > 1e-6) ++bad;
          }
        }
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "worst imag %.1e, worst parseval %.1e, %lld failures",
                      worst_res, worst_par, bad);
        note = buf;
        return bad == 0;
      });

  std::printf("acceptance: %d of %d criteria passed\n", g_passed, g_index);
  return g_passed == g_index ? 0 : 1;
}
