#include "sumfree/structure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>

#include "sumfree/fourier.hpp"
#include "sumfree/sumfree.hpp"
#include "sumfree/trig.hpp"

namespace sumfree {

namespace {

// Sorts, deduplicates and range-checks a set of element indices.
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

std::vector<char> to_flags(const Group& g, const std::vector<long long>& s) {
  std::vector<char> f((std::size_t)g.order(), 0);
  for (long long x : s) f[(std::size_t)x] = 1;
  return f;
}

}  // namespace

PopTable r_table(const Group& g, const std::vector<long long>& a,
                 const std::vector<long long>& b) {
  auto A = norm_set(g, a, "r_table A");
  auto B = norm_set(g, b, "r_table B");
  PopTable t;
  t.k = (long long)A.size();
  t.l = (long long)B.size();
  t.r.assign((std::size_t)g.order(), 0);
  for (long long x : A)
    for (long long y : B) t.r[(std::size_t)g.add(x, y)]++;
  return t;
}

std::vector<long long> popular_differences(const Group& g,
                                           const std::vector<long long>& x,
                                           long long k_threshold) {
  if (k_threshold < 1)
    throw sf_error(errc::invalid_argument, "popular_differences: K must be >= 1");
  auto X = norm_set(g, x, "popular_differences X");
  std::vector<long long> reps((std::size_t)g.order(), 0);
  for (long long u : X)
    for (long long v : X) reps[(std::size_t)g.sub(u, v)]++;
  std::vector<long long> out;
  for (long long d = 0; d < g.order(); ++d)
    if (reps[(std::size_t)d] >= k_threshold) out.push_back(d);
  return out;
}

std::vector<long long> popular_sums(const Group& g, const std::vector<long long>& a,
                                    const std::vector<long long>& b,
                                    const Rational& k_threshold) {
  if (k_threshold <= 0)
    throw sf_error(errc::invalid_argument, "popular_sums: K must be positive");
  PopTable t = r_table(g, a, b);
  std::vector<long long> out;
  for (long long x = 0; x < g.order(); ++x)
    if (Rational(t.r[(std::size_t)x]) >= k_threshold) out.push_back(x);
  return out;
}

KPResult verify_kp(const Group& g, const std::vector<long long>& a,
                   const std::vector<long long>& b, long long t) {
  PopTable tab = r_table(g, a, b);
  if (t < 0 || t > std::min(tab.k, tab.l))
    throw sf_error(errc::invalid_argument,
                   "verify_kp: t must satisfy 0 <= t <= min(|A|,|B|)");
  KPResult res;
  for (long long r : tab.r) res.lhs += std::min(t, r);
  long long d = defect(g);
  res.rhs = t * std::min(g.order(), tab.k + tab.l - d - t);
  res.ok = res.lhs >= res.rhs;
  return res;
}

PopularSumsBound verify_popular_sums_bound(const Group& g,
                                           const std::vector<long long>& a,
                                           const std::vector<long long>& b,
                                           const Rational& k_threshold) {
  if (k_threshold <= 0)
    throw sf_error(errc::invalid_argument,
                   "verify_popular_sums_bound: K must be positive");
  PopTable tab = r_table(g, a, b);
  long long n = g.order();
  Rational kn = k_threshold * n;
  long long mincard = std::min(tab.k, tab.l);
  // Premise min(k,l) >= sqrt(Kn), checked exactly by squaring.
  if (Rational(mincard) * mincard < kn)
    throw sf_error(errc::premise_failed,
                   "verify_popular_sums_bound: min(|A|,|B|) < sqrt(K*n)");
  PopularSumsBound res;
  for (long long r : tab.r)
    if (Rational(r) >= k_threshold) res.lhs++;
  long long m = std::min(n, tab.k + tab.l - defect(g));
  res.rhs = (double)m - 3.0 * std::sqrt((double)n * (double)k_threshold);
  if (res.lhs >= m) {
    res.ok = true;
  } else {
    // lhs >= m - 3 sqrt(Kn)  <=>  (m - lhs)^2 <= 9 K n  (both sides >= 0 here).
    Rational gap(m - res.lhs);
    res.ok = gap * gap <= 9 * kn;
  }
  return res;
}

// ---------------------------------------------------------------------------
// extract_sumfree
// ---------------------------------------------------------------------------

namespace {

// All ordered Schur triples (x, y, x + y) within `flags`.
std::vector<std::array<long long, 3>> ordered_triples(const Group& g,
                                                      const std::vector<char>& flags) {
  std::vector<std::array<long long, 3>> out;
  long long n = g.order();
  for (long long x = 0; x < n; ++x) {
    if (!flags[(std::size_t)x]) continue;
    for (long long y = 0; y < n; ++y) {
      if (!flags[(std::size_t)y]) continue;
      long long z = g.add(x, y);
      if (flags[(std::size_t)z]) out.push_back({x, y, z});
    }
  }
  return out;
}

}  // namespace

std::vector<long long> extract_sumfree(const Group& g, const std::vector<long long>& f,
                                       const Rational& eps) {
  if (eps <= 0)
    throw sf_error(errc::invalid_argument, "extract_sumfree: eps must be positive");
  auto F = norm_set(g, f, "extract_sumfree F");
  long long n = g.order();
  if (Rational((long long)F.size()) < (Rational(1, 3) + eps) * n)
    throw sf_error(errc::premise_failed, "extract_sumfree: |F| < (1/3 + eps) n");
  long long actual = schur_triples(g, F);
  Rational nbound = eps * eps * eps * n * n / 27;  // N
  if (Rational(actual) > nbound)
    throw sf_error(errc::premise_failed,
                   "extract_sumfree: more than eps^3 n^2 / 27 Schur triples");

  std::vector<long long> S;
  if (actual == 0) {
    S = F;
  } else if (nbound * nbound <= n) {
    // Remove one element per Schur triple, highest incidence first.
    auto flags = to_flags(g, F);
    for (;;) {
      auto triples = ordered_triples(g, flags);
      if (triples.empty()) break;
      std::vector<long long> inc((std::size_t)n, 0);
      for (const auto& t : triples) {
        inc[(std::size_t)t[0]]++;
        inc[(std::size_t)t[1]]++;
        inc[(std::size_t)t[2]]++;
      }
      long long best = -1;
      for (long long x = 0; x < n; ++x)
        if (flags[(std::size_t)x] && inc[(std::size_t)x] > 0 &&
            (best < 0 || inc[(std::size_t)x] > inc[(std::size_t)best]))
          best = x;
      flags[(std::size_t)best] = 0;
    }
    for (long long x = 0; x < n; ++x)
      if (flags[(std::size_t)x]) S.push_back(x);
  } else {
    // K = ceil((N^2/n)^{1/3}).
    Rational ratio = nbound * nbound / n;
    Int k_int = iroot(rational_floor(ratio), 3);
    while (Rational(k_int) * Rational(k_int) * Rational(k_int) < ratio) ++k_int;
    if (k_int < 1) k_int = 1;
    long long K = (long long)k_int;

    auto dk = popular_differences(g, F, K);
    auto dk_flags = to_flags(g, dk);

    // Deletion budget: removals^2 <= K * |F - F|.
    std::vector<char> diff_flags((std::size_t)n, 0);
    long long diff_count = 0;
    for (long long u : F)
      for (long long v : F) {
        std::size_t d = (std::size_t)g.sub(u, v);
        if (!diff_flags[d]) {
          diff_flags[d] = 1;
          ++diff_count;
        }
      }
    Int budget_sq = Int(K) * diff_count;
    long long budget = (long long)isqrt(budget_sq);

    auto flags = to_flags(g, F);
    long long removed = 0;
    bool greedy_ok = true;
    for (;;) {
      // Count, per element, the ordered pairs whose difference is unpopular.
      std::vector<long long> bad((std::size_t)n, 0);
      long long total_bad = 0;
      for (long long u : F) {
        if (!flags[(std::size_t)u]) continue;
        for (long long v : F) {
          if (!flags[(std::size_t)v]) continue;
          if (!dk_flags[(std::size_t)g.sub(u, v)]) {
            bad[(std::size_t)u]++;
            bad[(std::size_t)v]++;
            total_bad++;
          }
        }
      }
      if (total_bad == 0) break;
      if (removed >= budget) {
        greedy_ok = false;
        break;
      }
      long long best = -1;
      for (long long x = 0; x < n; ++x)
        if (flags[(std::size_t)x] && bad[(std::size_t)x] > 0 &&
            (best < 0 || bad[(std::size_t)x] > bad[(std::size_t)best]))
          best = x;
      flags[(std::size_t)best] = 0;
      ++removed;
    }

    if (!greedy_ok) {
      // Bounded exhaustive search over deletion sets, smallest first.
      flags = to_flags(g, F);
      long long fs = (long long)F.size();
      long long iterations = 0;
      bool found = false;
      std::vector<int> pick;
      auto bad_free = [&](const std::vector<char>& fl) {
        for (long long u : F) {
          if (!fl[(std::size_t)u]) continue;
          for (long long v : F) {
            if (!fl[(std::size_t)v]) continue;
            if (!dk_flags[(std::size_t)g.sub(u, v)]) return false;
          }
        }
        return true;
      };
      for (long long size = 1; size <= budget && size <= fs && !found; ++size) {
        std::vector<long long> idx((std::size_t)size);
        for (long long i = 0; i < size; ++i) idx[(std::size_t)i] = i;
        for (;;) {
          if (++iterations > 2000000)
            throw sf_error(errc::search_failure,
                           "extract_sumfree: deletion-set search budget exhausted");
          auto fl = to_flags(g, F);
          for (long long i : idx) fl[(std::size_t)F[(std::size_t)i]] = 0;
          if (bad_free(fl)) {
            flags = fl;
            found = true;
            break;
          }
          long long j = size - 1;
          while (j >= 0 && idx[(std::size_t)j] == fs - size + j) --j;
          if (j < 0) break;
          idx[(std::size_t)j]++;
          for (long long i = j + 1; i < size; ++i)
            idx[(std::size_t)i] = idx[(std::size_t)i - 1] + 1;
        }
      }
      if (!found)
        throw sf_error(errc::search_failure,
                       "extract_sumfree: no deletion set within budget");
    }

    // S = F' \ (F' - F').
    std::vector<char> fdiff((std::size_t)n, 0);
    std::vector<long long> fprime;
    for (long long x = 0; x < n; ++x)
      if (flags[(std::size_t)x]) fprime.push_back(x);
    for (long long u : fprime)
      for (long long v : fprime) fdiff[(std::size_t)g.sub(u, v)] = 1;
    for (long long x : fprime)
      if (!fdiff[(std::size_t)x]) S.push_back(x);
  }

  if (!is_sum_free(g, S))
    throw sf_error(errc::internal, "extract_sumfree: result is not sum-free");
  if (Rational((long long)S.size()) < Rational((long long)F.size()) - eps * n)
    throw sf_error(errc::internal, "extract_sumfree: |S| < |F| - eps n");
  return S;
}

// ---------------------------------------------------------------------------
// Covers.
// ---------------------------------------------------------------------------

KneserCover kneser_cover(const Group& g, const std::vector<long long>& a,
                         const Rational& r) {
  if (r <= 0)
    throw sf_error(errc::invalid_argument, "kneser_cover: r must be positive");
  auto A = norm_set(g, a, "kneser_cover A");
  if (!is_sum_free(g, A))
    throw sf_error(errc::premise_failed, "kneser_cover: A is not sum-free");
  long long n = g.order();
  if (Rational((long long)A.size()) < Rational(n, 3) + r)
    throw sf_error(errc::premise_failed, "kneser_cover: |A| < n/3 + r");

  std::vector<char> sumset((std::size_t)n, 0);
  std::vector<long long> slist;
  for (long long x : A)
    for (long long y : A) sumset[(std::size_t)g.add(x, y)] = 1;
  for (long long s = 0; s < n; ++s)
    if (sumset[(std::size_t)s]) slist.push_back(s);

  Subgroup stabilizer;
  for (long long h = 0; h < n; ++h) {
    bool stab = true;
    for (long long s : slist)
      if (!sumset[(std::size_t)g.add(s, h)]) {
        stab = false;
        break;
      }
    if (stab) stabilizer.elements.push_back(h);
  }
  if (Rational(stabilizer.size()) < 3 * r)
    throw sf_error(errc::internal, "kneser_cover: |H| < 3r (theorem violation)");

  QuotientMap qm = quotient(g, stabilizer);
  KneserCover out{std::move(stabilizer), std::move(qm), {}};
  std::set<long long> image;
  for (long long x : A) image.insert(out.map.image[(std::size_t)x]);
  out.image.assign(image.begin(), image.end());
  if (!is_sum_free(out.map.quotient, out.image))
    throw sf_error(errc::internal,
                   "kneser_cover: projection is not sum-free (theorem violation)");
  return out;
}

HomZp typeI_cover(const Group& g, const std::vector<long long>& a) {
  Classification cls = classify(g);
  if (cls.type != GroupType::I)
    throw sf_error(errc::not_applicable, "typeI_cover: group is not type I");
  long long p = cls.parameter;
  long long k = (p - 2) / 3;
  auto A = norm_set(g, a, "typeI_cover A");
  if (!is_sum_free(g, A))
    throw sf_error(errc::premise_failed, "typeI_cover: A is not sum-free");
  if (Rational((long long)A.size()) <=
      (Rational(1, 3) + Rational(1, 3 * (p + 1))) * g.order())
    throw sf_error(errc::premise_failed,
                   "typeI_cover: |A| <= (1/3 + 1/(3(p+1))) n");

  for (const HomZp& psi : homs_to_Zp(g, p)) {
    bool zero = true;
    for (long long c : psi.coeffs)
      if (c != 0) zero = false;
    if (zero) continue;
    bool covers = true;
    for (long long x : A) {
      long long v = eval_hom(g, psi, x);
      if (v < k + 1 || v > 2 * k + 1) {
        covers = false;
        break;
      }
    }
    if (covers) return psi;
  }
  throw sf_error(errc::internal,
                 "typeI_cover: no covering homomorphism (theorem violation)");
}

long long vosper_check(const Group& zp, const std::vector<long long>& b) {
  long long p = zp.order();
  auto pf = factorize(p);
  if (pf.size() != 1 || pf[0].second != 1 || zp.canonical_factors() != std::vector<long long>{p})
    throw sf_error(errc::not_applicable, "vosper_check: group is not Z/p, p prime");
  if (p % 3 != 2)
    throw sf_error(errc::not_applicable, "vosper_check: p is not 2 mod 3");
  long long k = (p - 2) / 3;
  auto B = norm_set(zp, b, "vosper_check B");
  if ((long long)B.size() != k + 1)
    throw sf_error(errc::premise_failed, "vosper_check: |B| != k + 1");
  if (!is_sum_free(zp, B))
    throw sf_error(errc::premise_failed, "vosper_check: B is not sum-free");

  for (long long c = 1; c < p; ++c) {
    std::set<long long> dilate;
    for (long long t = k + 1; t <= 2 * k + 1; ++t) dilate.insert((c * t) % p);
    if (std::vector<long long>(dilate.begin(), dilate.end()) == B) return c;
  }
  throw sf_error(errc::internal,
                 "vosper_check: no dilate matches (theorem violation)");
}

// ---------------------------------------------------------------------------
// Profiles.
// ---------------------------------------------------------------------------

CosetProfile coset_profile(const Group& g, const std::vector<long long>& a,
                           long long gamma) {
  if (gamma < 0 || gamma >= g.order())
    throw sf_error(errc::invalid_argument, "coset_profile: bad character index");
  auto A = norm_set(g, a, "coset_profile A");
  CosetProfile prof;
  prof.gamma = gamma;
  prof.q = g.character_order(gamma);
  long long m = g.exponent();
  long long scale = m / prof.q;  // q divides m

  std::vector<long long> counts((std::size_t)prof.q, 0);
  for (long long x = 0; x < g.order(); ++x) {
    long long v = g.pairing(gamma, x);
    if (v % scale != 0)
      throw sf_error(errc::internal, "coset_profile: pairing not q-periodic");
    if (v == 0) prof.kernel.elements.push_back(x);
  }
  for (long long x : A) counts[(std::size_t)(g.pairing(gamma, x) / scale)]++;

  long long hsize = prof.kernel.size();
  if (hsize * prof.q != g.order())
    throw sf_error(errc::internal, "coset_profile: |ker| * q != n");
  prof.alphas.reserve((std::size_t)prof.q);
  long long total = 0;
  for (long long j = 0; j < prof.q; ++j) {
    prof.alphas.emplace_back(counts[(std::size_t)j], hsize);
    total += counts[(std::size_t)j];
  }
  if (total != (long long)A.size())
    throw sf_error(errc::internal, "coset_profile: coset counts do not add up");
  prof.has_middle = (prof.q % 6 == 1);
  prof.k = prof.has_middle ? (prof.q - 1) / 6 : 0;
  return prof;
}

SpecialDirection special_direction(const Group& g, const std::vector<long long>& a) {
  auto A = norm_set(g, a, "special_direction A");
  if (A.empty())
    throw sf_error(errc::invalid_argument, "special_direction: A is empty");
  if (g.order() < 2)
    throw sf_error(errc::not_applicable,
                   "special_direction: trivial group has no nontrivial characters");
  auto fhat = dft(g, A);
  double vmin = fhat[1].real();
  for (long long a2 = 2; a2 < g.order(); ++a2)
    vmin = std::min(vmin, fhat[(std::size_t)a2].real());
  double tol = 1e-9 * (double)g.order();
  long long pick = 1;
  for (long long a2 = 1; a2 < g.order(); ++a2)
    if (fhat[(std::size_t)a2].real() <= vmin + tol) {
      pick = a2;
      break;
    }
  SpecialDirection sd;
  sd.gamma = pick;
  sd.re_min = fhat[(std::size_t)pick].real();
  sd.profile = coset_profile(g, A, pick);
  return sd;
}

BetaProfile beta_profile(const CosetProfile& profile, const Rational& kappa) {
  if (kappa < 0)
    throw sf_error(errc::invalid_argument, "beta_profile: kappa must be >= 0");
  BetaProfile bp;
  bp.kappa = kappa;
  bp.betas.reserve(profile.alphas.size());
  for (const Rational& al : profile.alphas)
    bp.betas.push_back(al <= kappa ? Rational(0) : (al - kappa) / (1 + kappa));
  return bp;
}

bool check_essentially_middled(const CosetProfile& profile, const Rational& kappa) {
  if (!profile.has_middle)
    throw sf_error(errc::not_applicable,
                   "check_essentially_middled: q is not 1 mod 6");
  for (long long i = 0; i < profile.q; ++i) {
    if (i >= profile.k + 1 && i <= 5 * profile.k) continue;
    if (profile.alphas[(std::size_t)i] > 2 * kappa) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Alpha-inequality battery.
// ---------------------------------------------------------------------------

AlphaReport check_alpha_inequalities(const Group& g, const std::vector<long long>& a,
                                     const Rational& delta, unsigned bits) {
  if (delta < 0)
    throw sf_error(errc::invalid_argument, "check_alpha: delta must be >= 0");
  auto A = norm_set(g, a, "check_alpha A");
  if (A.empty())
    throw sf_error(errc::invalid_argument, "check_alpha: A is empty");
  long long n = g.order();
  long long actual = schur_triples(g, A);
  if (Rational(actual) > delta * n * n)
    throw sf_error(errc::premise_failed,
                   "check_alpha: A has more than delta n^2 Schur triples");

  AlphaReport rep;
  rep.delta = delta;
  SpecialDirection sd = special_direction(g, A);
  rep.profile = sd.profile;
  long long q = rep.profile.q;
  const auto& al = rep.profile.alphas;

  // kappa = 32 delta^{1/3} q^{2/3}, enclosed.
  rep.kappa = rounded(Rational(32) * (root_enclosure(delta, 3, (int)bits) *
                                      root_enclosure(Rational(q) * q, 3, (int)bits)),
                      (int)bits);
  const Interval& kap = rep.kappa;
  Rational eta = pow2(-23);
  Rational nu_q(q - 1, 3 * q);
  Rational nu_g = nu(g);
  Rational lam = lambda_ratio(g);
  Rational card((long long)A.size());

  auto push = [&](ClauseReport c) {
    if (c.applicable && !c.pass) rep.all_pass = false;
    rep.clauses.push_back(std::move(c));
  };

  // (i): alpha_l > kappa  =>  alpha_j + alpha_{j+l} <= 1 + kappa.
  {
    ClauseReport c;
    c.name = "i";
    bool any = false;
    Rational maxsum = 0;
    long long arg_l = 0, arg_j = 0;
    for (long long l = 0; l < q; ++l) {
      if (al[(std::size_t)l] <= kap.hi) continue;  // premise not certain
      for (long long j = 0; j < q; ++j) {
        Rational s = al[(std::size_t)j] + al[(std::size_t)((j + l) % q)];
        if (!any || s > maxsum) {
          maxsum = s;
          arg_l = l;
          arg_j = j;
        }
        any = true;
      }
    }
    if (any) {
      c.has_slack = true;
      c.slack_lo = 1 + kap.lo - maxsum;
      c.slack_hi = 1 + kap.hi - maxsum;
      c.pass = !(maxsum > 1 + kap.hi);
      c.detail = "worst at l=" + std::to_string(arg_l) + " j=" + std::to_string(arg_j);
    } else {
      c.detail = "vacuous: no alpha_l certainly above kappa";
    }
    push(c);
  }

  // (ii): alpha_i + alpha_{2i} <= 1 + kappa, all i.
  {
    ClauseReport c;
    c.name = "ii";
    Rational maxsum = -1;
    long long arg_i = 0;
    for (long long i = 0; i < q; ++i) {
      Rational s = al[(std::size_t)i] + al[(std::size_t)((2 * i) % q)];
      if (s > maxsum) {
        maxsum = s;
        arg_i = i;
      }
    }
    c.has_slack = true;
    c.slack_lo = 1 + kap.lo - maxsum;
    c.slack_hi = 1 + kap.hi - maxsum;
    c.pass = !(maxsum > 1 + kap.hi);
    c.detail = "worst at i=" + std::to_string(arg_i);
    push(c);
  }

  // (iii): alpha_u, alpha_v, alpha_w > kappa and u + v = w
  //          =>  alpha_u + alpha_v + alpha_w <= 1 + lambda(G) + kappa.
  {
    ClauseReport c;
    c.name = "iii";
    bool any = false;
    Rational maxsum = 0;
    long long arg_u = 0, arg_v = 0;
    for (long long u = 0; u < q; ++u) {
      if (al[(std::size_t)u] <= kap.hi) continue;
      for (long long v = u; v < q; ++v) {
        if (al[(std::size_t)v] <= kap.hi) continue;
        long long w = (u + v) % q;
        if (al[(std::size_t)w] <= kap.hi) continue;
        Rational s = al[(std::size_t)u] + al[(std::size_t)v] + al[(std::size_t)w];
        if (!any || s > maxsum) {
          maxsum = s;
          arg_u = u;
          arg_v = v;
        }
        any = true;
      }
    }
    if (any) {
      c.has_slack = true;
      c.slack_lo = 1 + lam + kap.lo - maxsum;
      c.slack_hi = 1 + lam + kap.hi - maxsum;
      c.pass = !(maxsum > 1 + lam + kap.hi);
      c.detail = "worst at u=" + std::to_string(arg_u) + " v=" + std::to_string(arg_v);
    } else {
      c.detail = "vacuous: no triple certainly above kappa";
    }
    push(c);
  }

  bool size_gate = card >= (nu_g - eta / 8) * n;

  // (iv): q^{-1} sum alpha_j cos(2 pi j / q) + nu_q^2/(1 - nu_q) < 3 eta / 4.
  {
    ClauseReport c;
    c.name = "iv";
    bool kappa_gate = kap.hi <= eta / (8 * q);
    c.applicable = size_gate && kappa_gate;
    if (c.applicable) {
      auto costab = cos_table(q, (int)bits);
      Interval acc;
      for (long long j = 0; j < q; ++j)
        acc = acc + al[(std::size_t)j] * costab[(std::size_t)j];
      Interval lhs = Rational(1, q) * acc + Interval(nu_q * nu_q / (1 - nu_q));
      Rational bound = 3 * eta / 4;
      c.has_slack = true;
      c.slack_lo = bound - lhs.hi;
      c.slack_hi = bound - lhs.lo;
      c.pass = !(lhs.lo >= bound);
    } else {
      c.detail = size_gate ? "kappa > eta/8q" : "|A| < (nu - eta/8) n";
    }
    push(c);
  }

  // (v): sum alpha_j >= (nu_q - eta/8) q.
  {
    ClauseReport c;
    c.name = "v";
    c.applicable = size_gate;
    if (c.applicable) {
      Rational s = 0;
      for (const Rational& x : al) s += x;
      Rational slack = s - (nu_q - eta / 8) * q;
      c.has_slack = true;
      c.slack_lo = c.slack_hi = slack;
      c.pass = slack >= 0;
    } else {
      c.detail = "|A| < (nu - eta/8) n";
    }
    push(c);
  }

  // fourier: min_gamma Re Ahat(gamma) <= (6 delta - alpha^2/(1 - alpha)) n.
  // Valid for alpha >= 1/4 when delta = 0, and otherwise additionally needs
  // alpha (1 - alpha) >= 1/6 (i.e. alpha <= (6 + sqrt 12)/12): the underlying
  // estimate divides the exact identity
  //   sum_{gamma != 1} |Ahat|^2 Re Ahat = (delta - alpha^3) n^3
  // by alpha (1 - alpha) n^2 and then uses 1/(alpha (1 - alpha)) <= 6.  Dense
  // sets with many Schur triples genuinely violate the unrestricted claim, so
  // the clause is reported as not applicable outside this domain.
  {
    ClauseReport c;
    c.name = "fourier";
    Rational alpha = card / n;
    c.applicable = alpha >= Rational(1, 4) && alpha < 1 &&
                   (delta == 0 || alpha * (1 - alpha) >= Rational(1, 6));
    if (c.applicable) {
      long long m = g.exponent();
      auto costab = cos_table(m, (int)bits);
      Rational min_lo, min_hi;
      bool first = true;
      long long argmin = 0;
      std::vector<long long> hist((std::size_t)m, 0);
      for (long long ch = 0; ch < n; ++ch) {
        std::fill(hist.begin(), hist.end(), 0);
        for (long long x : A) hist[(std::size_t)g.pairing(ch, x)]++;
        Interval re;
        for (long long v = 0; v < m; ++v)
          if (hist[(std::size_t)v])
            re = re + Rational(hist[(std::size_t)v]) * costab[(std::size_t)v];
        if (first || re.lo < min_lo) {
          min_lo = re.lo;
          argmin = ch;
        }
        if (first || re.hi < min_hi) min_hi = re.hi;
        first = false;
      }
      Rational rhs = (6 * delta - alpha * alpha / (1 - alpha)) * n;
      c.has_slack = true;
      c.slack_lo = rhs - min_hi;
      c.slack_hi = rhs - min_lo;
      c.pass = !(min_lo > rhs);
      c.detail = "minimizer near character " + std::to_string(argmin);
    } else {
      c.detail = "|A|/n outside the lemma's valid density range";
    }
    push(c);
  }

  return rep;
}

}  // namespace sumfree
