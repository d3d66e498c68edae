#include "sumfree/lp.hpp"

#include <algorithm>
#include <sstream>

#include "sumfree/sumfree.hpp"
#include "sumfree/trig.hpp"

namespace sumfree {

namespace {

long long mod_idx(long long x, long long q) {
  x %= q;
  if (x < 0) x += q;
  return x;
}

void require_q(long long q) {
  if (q < 7 || q % 6 != 1)
    throw sf_error(errc::invalid_argument,
                   "q must be = 1 (mod 6) and >= 7, got " + std::to_string(q));
}

void require_ql(long long q, long long l) {
  require_q(q);
  long long k = (q - 1) / 6;
  if (l < 0 || l > k)
    throw sf_error(errc::invalid_argument,
                   "l must lie in [0, k] = [0, " + std::to_string(k) +
                       "], got " + std::to_string(l));
}

// Dense views of the sparse dual maps, indices folded mod q.
std::vector<Rational> densify(const std::map<long long, Rational>& m,
                              long long q, const char* what) {
  std::vector<Rational> v(q, Rational(0));
  for (const auto& [idx, val] : m) {
    if (val < 0)
      throw sf_error(errc::invalid_argument,
                     std::string(what) + "_" + std::to_string(idx) +
                         " is negative");
    v[mod_idx(idx, q)] += val;
  }
  return v;
}

std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

Rational lp_eta() { return pow2(-23); }

Rational lp_nu(long long q) {
  require_q(q);
  return Rational(q - 1, 3 * q);
}

Rational lp_constant(long long q) {
  Rational nu = lp_nu(q);
  return nu * nu / (1 - nu);
}

Interval cos_enclosure(long long j, long long q, int bits) {
  if (q < 1) throw sf_error(errc::invalid_argument, "q must be >= 1");
  return cos2pi(Rational(mod_idx(j, q), q), bits);
}

LPProblem build_primal(long long q, long long l,
                       const std::vector<ExtraRow>& extras, int bits) {
  require_ql(q, l);
  LPProblem p;
  p.q = q;
  p.l = l;
  p.k = (q - 1) / 6;
  p.eta = lp_eta();
  p.nu = lp_nu(q);
  p.constant = lp_constant(q);
  p.cosines = cos_table(q, bits);

  for (long long j = 1; j <= q; ++j) {
    LPRow row;
    row.coeffs[mod_idx(j, q)] += 1;
    row.coeffs[mod_idx(j + l, q)] += 1;
    row.rhs = 1;
    row.sense = RowSense::le;
    p.rows.push_back(std::move(row));
  }
  for (long long j = 1; j <= q; ++j) {
    LPRow row;
    row.coeffs[mod_idx(j, q)] += 1;
    row.coeffs[mod_idx(2 * j, q)] += 1;
    row.rhs = 1;
    row.sense = RowSense::le;
    p.rows.push_back(std::move(row));
  }
  {
    LPRow sum;
    for (long long j = 0; j < q; ++j) sum.coeffs[j] = 1;
    sum.rhs = (p.nu - p.eta) * q;
    sum.sense = RowSense::ge;
    p.rows.push_back(std::move(sum));
  }
  for (const auto& ex : extras) {
    if (ex.coeffs.empty())
      throw sf_error(errc::invalid_argument, "extra row with no coefficients");
    LPRow row;
    for (const auto& [idx, c] : ex.coeffs) row.coeffs[mod_idx(idx, q)] += c;
    row.rhs = ex.rhs;
    row.sense = RowSense::le;
    p.rows.push_back(std::move(row));
  }
  return p;
}

Interval objective_value(const LPProblem& p, const std::vector<Rational>& beta) {
  if ((long long)beta.size() != p.q)
    throw sf_error(errc::invalid_argument, "beta must have q entries");
  Interval acc{Rational(0), Rational(0)};
  for (long long j = 0; j < p.q; ++j) {
    if (beta[j] < 0)
      throw sf_error(errc::invalid_argument, "beta must be nonnegative");
    acc = acc + beta[j] * p.cosines[j];
  }
  return Rational(1, p.q) * acc + Interval(p.constant);
}

CertCheck check_certificate(const DualCertificate& cert, int bits) {
  require_ql(cert.q, cert.l);
  const long long q = cert.q;
  if (cert.tau < 0)
    throw sf_error(errc::invalid_argument, "tau is negative");
  if (cert.theta.size() > cert.extras.size())
    throw sf_error(errc::invalid_argument,
                   "more theta values than extra rows");
  for (const auto& th : cert.theta)
    if (th < 0) throw sf_error(errc::invalid_argument, "theta is negative");

  std::vector<Rational> lam = densify(cert.lambda, q, "lambda");
  std::vector<Rational> mu = densify(cert.mu, q, "mu");

  // Dense extra-row coefficients, folded mod q.
  std::vector<std::vector<Rational>> exco;
  for (const auto& ex : cert.extras) {
    std::vector<Rational> c(q, Rational(0));
    for (const auto& [idx, v] : ex.coeffs) c[mod_idx(idx, q)] += v;
    exco.push_back(std::move(c));
  }

  const long long half = (q + 1) / 2;  // 2 * half = 1 (mod q)
  std::vector<Interval> cos = cos_table(q, bits);

  CertCheck out;
  out.margins.reserve(q);
  Rational worst(0);
  for (long long j = 1; j <= q; ++j) {
    long long jj = mod_idx(j, q);
    Rational lhs = cert.tau - lam[jj] - lam[mod_idx(jj - cert.l, q)] -
                   mu[jj] - mu[mod_idx(half * jj, q)];
    for (size_t t = 0; t < cert.theta.size(); ++t)
      lhs -= cert.theta[t] * exco[t][jj];
    Rational margin = cos[jj].lo - lhs;
    if (margin < worst) worst = margin;
    out.margins.push_back(std::move(margin));
  }
  out.max_violation = -worst;  // worst <= 0 always
  out.feasible = worst >= 0;

  Rational dual = cert.tau * (lp_nu(q) - lp_eta()) * q;
  for (const auto& v : lam) dual -= v;
  for (const auto& v : mu) dual -= v;
  for (size_t t = 0; t < cert.theta.size(); ++t)
    dual -= cert.theta[t] * cert.extras[t].rhs;
  out.certified = dual / q + lp_constant(q);
  return out;
}

VerifyResult verify_dual_certificate(const DualCertificate& cert, int bits) {
  CertCheck c = check_certificate(cert, bits);
  if (!c.feasible) {
    std::ostringstream os;
    os << "dual certificate (q=" << cert.q << ", l=" << cert.l
       << ") infeasible at rows";
    for (long long j = 1; j <= cert.q; ++j)
      if (c.margins[j - 1] < 0) os << " j=" << j;
    os << "; worst violation " << rat_str(c.max_violation);
    throw sf_error(errc::infeasible, os.str());
  }
  if (c.certified < cert.claimed)
    throw sf_error(errc::bound_shortfall,
                   "certified bound " + rat_str(c.certified) +
                       " is below the claimed " + rat_str(cert.claimed));
  return {c.certified, c.margins};
}

DualCertificate repair_certificate(const DualCertificate& cert, int bits) {
  CertCheck c = check_certificate(cert, bits);
  if (c.feasible) return cert;
  DualCertificate fixed = cert;
  fixed.tau = cert.tau - (c.max_violation + pow2(-bits));
  if (fixed.tau < 0)
    throw sf_error(errc::infeasible,
                   "repair would need tau < 0 (violation " +
                       rat_str(c.max_violation) + ")");
  return fixed;
}

// ---------------------------------------------------------------------------
// Exact two-phase simplex, dense tableau, Bland's rule.
// Solves: maximize c.y subject to A y <= b, y >= 0 (b of arbitrary sign).
// ---------------------------------------------------------------------------

namespace {

struct Tableau {
  // rows: one per constraint; T[i] has `width` coefficient columns plus the
  // rhs in T[i][width].  obj mirrors that layout; obj[width] is the current
  // objective value.  basis[i] = column index basic in row i.
  std::vector<std::vector<Rational>> T;
  std::vector<Rational> obj;
  std::vector<long long> basis;
  size_t width = 0;

  void pivot(size_t row, size_t col) {
    Rational piv = T[row][col];
    for (auto& v : T[row]) v /= piv;
    for (size_t i = 0; i < T.size(); ++i) {
      if (i == row) continue;
      Rational f = T[i][col];
      if (f == 0) continue;
      for (size_t j = 0; j <= width; ++j) T[i][j] -= f * T[row][j];
    }
    Rational f = obj[col];
    if (f != 0)
      for (size_t j = 0; j <= width; ++j) obj[j] -= f * T[row][j];
    basis[row] = (long long)col;
  }

  // Bland's rule: entering = smallest column with negative reduced cost;
  // leaving = lexicographically safe min-ratio row (ties by smallest basic
  // index).  Returns false when optimal, throws on unbounded.
  bool step(size_t active_width) {
    size_t enter = active_width;
    for (size_t j = 0; j < active_width; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == active_width) return false;
    size_t leave = T.size();
    Rational best;
    for (size_t i = 0; i < T.size(); ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][width] / T[i][enter];
      if (leave == T.size() || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == T.size())
      throw sf_error(errc::internal, "simplex: unbounded direction");
    pivot(leave, enter);
    return true;
  }

  void run(size_t active_width) {
    while (step(active_width)) {
    }
  }
};

struct SimplexSolution {
  std::vector<Rational> y;
  Rational objective;
};

SimplexSolution solve_lp_max(const std::vector<std::vector<Rational>>& A,
                             const std::vector<Rational>& b,
                             const std::vector<Rational>& c) {
  const size_t m = A.size(), n = c.size();
  // Columns: n structural, m slack, then one artificial per negative-rhs row.
  std::vector<size_t> art_rows;
  for (size_t i = 0; i < m; ++i)
    if (b[i] < 0) art_rows.push_back(i);
  const size_t na = art_rows.size();
  const size_t width = n + m + na;

  Tableau t;
  t.width = width;
  t.T.assign(m, std::vector<Rational>(width + 1, Rational(0)));
  t.basis.assign(m, 0);
  {
    size_t a = 0;
    for (size_t i = 0; i < m; ++i) {
      Rational sign = b[i] < 0 ? Rational(-1) : Rational(1);
      for (size_t j = 0; j < n; ++j) t.T[i][j] = sign * A[i][j];
      t.T[i][n + i] = sign;  // slack
      t.T[i][width] = sign * b[i];
      if (b[i] < 0) {
        t.T[i][n + m + a] = 1;
        t.basis[i] = (long long)(n + m + a);
        ++a;
      } else {
        t.basis[i] = (long long)(n + i);
      }
    }
  }

  if (na > 0) {
    // Phase 1: maximize -(sum of artificials).
    t.obj.assign(width + 1, Rational(0));
    for (size_t a = 0; a < na; ++a) t.obj[n + m + a] = 1;
    for (size_t i : art_rows)
      for (size_t j = 0; j <= width; ++j) t.obj[j] -= t.T[i][j];
    t.run(width);
    if (t.obj[width] != 0)
      throw sf_error(errc::infeasible, "simplex: no feasible point");
    // Drive any zero-valued basic artificial out of the basis.
    for (size_t i = 0; i < m; ++i) {
      if (t.basis[i] < (long long)(n + m)) continue;
      size_t piv_col = n + m;
      for (size_t j = 0; j < n + m; ++j)
        if (t.T[i][j] != 0) {
          piv_col = j;
          break;
        }
      if (piv_col < n + m) {
        t.pivot(i, piv_col);
      } else {
        // Redundant row: every real coefficient is zero.  Blank it.
        for (size_t j = 0; j <= width; ++j) t.T[i][j] = 0;
        t.T[i][t.basis[i]] = 1;
      }
    }
  }

  // Phase 2 objective over structural + slack columns only.
  t.obj.assign(width + 1, Rational(0));
  for (size_t j = 0; j < n; ++j) t.obj[j] = -c[j];
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= (long long)(n + m)) continue;  // blanked redundant row
    Rational f = t.obj[t.basis[i]];
    if (f == 0) continue;
    for (size_t j = 0; j <= width; ++j) t.obj[j] -= f * t.T[i][j];
  }
  t.run(n + m);  // artificials stay out

  SimplexSolution sol;
  sol.y.assign(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (t.basis[i] >= 0 && t.basis[i] < (long long)n)
      sol.y[t.basis[i]] = t.T[i][width];
  sol.objective = t.obj[width];
  return sol;
}

}  // namespace

DualCertificate solve_and_certify(long long q, long long l,
                                  const std::vector<ExtraRow>& extras,
                                  const Rational& target, int bits) {
  require_ql(q, l);
  for (const auto& ex : extras)
    if (ex.coeffs.empty())
      throw sf_error(errc::invalid_argument, "extra row with no coefficients");

  const size_t T = extras.size();
  const size_t n = 2 * q + 1 + T;  // lambda_0.., mu_0.., tau, theta_0..
  const size_t vtau = 2 * q;
  const long long half = (q + 1) / 2;

  std::vector<std::vector<Rational>> exco;
  for (const auto& ex : extras) {
    std::vector<Rational> c(q, Rational(0));
    for (const auto& [idx, v] : ex.coeffs) c[mod_idx(idx, q)] += v;
    exco.push_back(std::move(c));
  }

  // Row j (j = 0..q-1):
  //   tau - lambda_j - lambda_{j-l} - mu_j - mu_{j/2} - sum theta_t c_t[j]
  //     <= round_down(lo cos(2 pi j / q)).
  // Rounding the rhs *down* keeps every solution feasible for the true
  // cosines; 40 fractional bits keep the exact pivots small.
  const int rhs_bits = std::min(bits, 40);
  std::vector<Interval> cosv = cos_table(q, bits);
  std::vector<std::vector<Rational>> A(q, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> b(q);
  for (long long j = 0; j < q; ++j) {
    A[j][vtau] += 1;
    A[j][j] -= 1;
    A[j][mod_idx(j - l, q)] -= 1;
    A[j][q + j] -= 1;
    A[j][q + mod_idx(half * j, q)] -= 1;
    for (size_t t = 0; t < T; ++t) A[j][2 * q + 1 + t] -= exco[t][j];
    b[j] = dyadic_round_down(cosv[j].lo, rhs_bits);
  }

  std::vector<Rational> c(n, Rational(0));
  for (long long j = 0; j < q; ++j) c[j] = c[q + j] = Rational(-1);
  c[vtau] = (lp_nu(q) - lp_eta()) * q;
  for (size_t t = 0; t < T; ++t) c[2 * q + 1 + t] = -extras[t].rhs;

  SimplexSolution sol = solve_lp_max(A, b, c);

  DualCertificate cert;
  cert.q = q;
  cert.l = l;
  cert.tau = sol.y[vtau];
  for (long long j = 0; j < q; ++j) {
    if (sol.y[j] != 0) cert.lambda[j == 0 ? q : j] = sol.y[j];
    if (sol.y[q + j] != 0) cert.mu[j == 0 ? q : j] = sol.y[q + j];
  }
  cert.theta.assign(T, Rational(0));
  for (size_t t = 0; t < T; ++t) cert.theta[t] = sol.y[2 * q + 1 + t];
  cert.extras = extras;
  cert.claimed = target;

  Rational certified = sol.objective / q + lp_constant(q);
  if (certified < target)
    throw sf_error(errc::bound_shortfall,
                   "optimum certifies only " + rat_str(certified) +
                       " < target " + rat_str(target));
  return cert;
}

Interval closed_form_E0(long long q, bool l_odd, int bits) {
  require_q(q);
  long long k = (q - 1) / 6;
  Interval two_sin = Rational(2) * sin_pi_frac(1, q, bits);
  if (!l_odd) return -(sin_pi_frac(4 * k, q, bits) / two_sin);
  return -(sin_pi_frac(4 * k - 1, q, bits) / two_sin) -
         Rational(1, 2) * cos_pi_frac(4 * k, q, bits);
}

Interval closed_form_M_bound(long long q, long long l, int bits) {
  require_ql(q, l);
  Interval e0 = closed_form_E0(q, l % 2 != 0, bits);
  Interval denom = Rational(q) * cos_pi_frac(l, q, bits);  // >= q/2 > 0
  Interval konst{lp_constant(q) - 6 * lp_eta(), lp_constant(q) - 6 * lp_eta()};
  return e0 / denom + konst;
}

SweepResult sweep_closed_form(long long q_max, int bits) {
  if (q_max < 7)
    throw sf_error(errc::invalid_argument, "q_max must be >= 7");
  SweepResult out;
  const Rational eta = lp_eta();
  const int coarse = std::min(24, bits);
  for (long long q = 7; q <= q_max; q += 6) {
    bool type3 = true;
    for (const auto& pe : factorize(q))
      if (pe.first % 3 != 1) {
        type3 = false;
        break;
      }
    if (!type3) continue;
    long long k = (q - 1) / 6;
    const Rational konst = lp_constant(q) - 6 * lp_eta();

    // E(0) depends only on the parity of l; cache it per precision level.
    Interval e0_cache[2][2];
    bool e0_have[2][2] = {{false, false}, {false, false}};
    auto e0_at = [&](bool odd, bool full) -> const Interval& {
      if (!e0_have[odd][full]) {
        e0_cache[odd][full] = closed_form_E0(q, odd, full ? bits : coarse);
        e0_have[odd][full] = true;
      }
      return e0_cache[odd][full];
    };
    auto bound = [&](long long l, bool full) {
      int b = full ? bits : coarse;
      Interval denom = Rational(q) * cos_pi_frac(l, q, b);  // >= q/2 > 0
      return e0_at(l % 2 != 0, full) / denom + Interval{konst, konst};
    };
    // A coarse enclosure that clears (or misses) eta outright settles the
    // pair; only near-threshold pairs pay for the full precision.
    auto fails = [&](long long l) {
      Interval m = bound(l, false);
      if (m.lo >= eta) return false;
      if (m.hi < eta) return true;
      return bound(l, true).lo < eta;
    };
    bool low = false;
    for (long long l = 0; l <= std::max<long long>(0, k - 2) && !low; ++l)
      low = fails(l);
    if (low) out.low.push_back(q);
    if (k - 1 >= 0 && fails(k - 1)) out.mid.push_back(q);
    if (fails(k)) out.high.push_back(q);
  }
  return out;
}

std::vector<CaseResult> case_analysis(long long q, const std::string& cert_dir,
                                      int bits) {
  std::vector<std::string> stems;
  if (q == 19)
    stems = {"q19_l3_case1", "q19_l3_case2", "q19_l2_case1",
             "q19_l2_case2", "q19_l1_case1", "q19_l1_case2"};
  else if (q == 13)
    stems = {"q13_l2_case1", "q13_l2_case2", "q13_l1_case1", "q13_l1_case2"};
  else if (q == 7)
    stems = {"q7_l1_case1", "q7_l1_case2", "q7_l1_case3", "q7_l1_case4"};
  else
    throw sf_error(errc::invalid_argument,
                   "case analysis covers q = 7, 13, 19 only");

  if (q == 7) {
    // The sub-case beta_1 = beta_6 = 0 is eliminated by hand: summing
    // beta_0 + 2 beta_i over i = 2..5 against (2 beta_2 + beta_4),
    // (2 beta_5 + beta_3) and (beta_3 + beta_4) gives
    // 4 (beta_0 + beta_2 + .. + beta_5) <= 32/7 + 8/7 + 8/7 + 1,
    // which contradicts sum beta >= 2 - eta.  Exact identity:
    Rational lhs = Rational(32, 7) + Rational(8, 7) + Rational(8, 7) + 1;
    if (lhs != Rational(55, 7) || lhs != 4 * (2 - Rational(1, 28)))
      throw sf_error(errc::internal, "rational identity check failed");
  }

  std::vector<CaseResult> out;
  for (const auto& stem : stems) {
    DualCertificate cert = load_certificate(cert_dir + "/" + stem + ".json");
    CaseResult r;
    r.name = stem;
    r.q = cert.q;
    r.l = cert.l;
    r.claimed = cert.claimed;
    CertCheck chk = check_certificate(cert, bits);
    if (!chk.feasible) {
      cert = repair_certificate(cert, bits);
      chk = check_certificate(cert, bits);
      r.repaired = true;
    }
    if (!chk.feasible || chk.certified < r.claimed) {
      cert = solve_and_certify(cert.q, cert.l, cert.extras, r.claimed, bits);
      chk = check_certificate(cert, bits);
      r.regenerated = true;
      if (!chk.feasible || chk.certified < r.claimed)
        throw sf_error(errc::bound_shortfall,
                       "sub-case " + stem + " certifies only " +
                           rat_str(chk.certified) + " < claimed " +
                           rat_str(r.claimed));
    }
    r.certified = chk.certified;
    out.push_back(std::move(r));
  }
  return out;
}

TypeIIIStability verify_typeIII_stability(const Group& g,
                                          const std::vector<long long>& a,
                                          int bits) {
  Classification cls = classify(g);
  if (cls.type != GroupType::III)
    throw sf_error(errc::premise_failed,
                   std::string("group is type ") + type_name(cls.type) +
                       ", the bound needs type III");
  const long long n = g.order();
  const long long m = g.exponent();

  TypeIIIStability out;
  out.size = (long long)a.size();
  out.delta = Rational(Int(schur_triples(g, a)), Int(n) * Int(n));

  Rational cap = pow2(-93) / (Rational(m) * m * m * m * m);
  if (out.delta > cap)
    throw sf_error(errc::premise_failed,
                   "delta = " + rat_str(out.delta) + " exceeds 2^-93 m^-5 = " +
                       rat_str(cap));

  // rhs = (nu + 64 (m^2 delta)^(1/3)) n, enclosed.
  Interval root = root_enclosure(Rational(m) * m * out.delta, 3, bits);
  Interval rhs = Rational(n) * (Interval(cls.nu) + Rational(64) * root);
  out.rhs = rhs;
  out.ok = Rational(out.size) <= rhs.lo;

  Interval root5 = root_enclosure(out.delta, 5, bits);
  Rational combined = (cls.nu + pow2(20) * root5.lo) * n;
  out.combined_ok = Rational(out.size) <= combined;
  return out;
}

}  // namespace sumfree
