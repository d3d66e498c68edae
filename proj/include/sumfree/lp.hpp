#pragma once

#include <map>
#include <string>
#include <vector>

#include "sumfree/group.hpp"
#include "sumfree/interval.hpp"

namespace sumfree {

// Linear-programming toolkit for the density bound on near-sum-free sets.
//
// Throughout, q = 1 (mod 6), k = (q-1)/6, nu_q = (q-1)/(3q) = 2k/q and
// eta = 2^-23.  The primal problem has variables beta_0..beta_{q-1} in [0,1]
// (Fourier mass fractions on the residues mod q) and minimizes
//
//     M(beta) = (1/q) * sum_j beta_j cos(2 pi j / q) + nu_q^2 / (1 - nu_q)
//
// subject to
//     beta_j + beta_{j+l} <= 1        for j = 1..q   (indices mod q),
//     beta_j + beta_{2j}  <= 1        for j = 1..q,
//     sum_j beta_j        >= (nu_q - eta) q,
//     beta_j              >= 0,
// plus optional extra rows.  Certifying M >= eta for a pair (q, l) rules out
// a non-middled mass distribution; the structure theorem for type III groups
// reduces to a finite list of such certifications.

// eta = 2^-23, the slack constant used by every bound here.
Rational lp_eta();

// nu_q = (q-1)/(3q).  Requires q = 1 (mod 6).
Rational lp_nu(long long q);

// nu_q^2 / (1 - nu_q), the constant term of the objective.
Rational lp_constant(long long q);

// Enclosure of cos(2 pi j / q), width <= 2^-bits.  j is reduced mod q.
Interval cos_enclosure(long long j, long long q, int bits = 64);

// One extra linear constraint sum_i coeffs[i] * beta_i <= rhs.  Keys are
// residue indices mod q (key q is the same variable as key 0).
struct ExtraRow {
  std::map<long long, Rational> coeffs;
  Rational rhs;
};

// sense of an LP row: coeffs . beta  (<=|>=)  rhs.
enum class RowSense { le, ge };

struct LPRow {
  std::map<long long, Rational> coeffs;  // keys 0..q-1
  Rational rhs;
  RowSense sense = RowSense::le;
};

struct LPProblem {
  long long q = 0;
  long long l = 0;
  long long k = 0;
  Rational eta;                  // 2^-23
  Rational nu;                   // (q-1)/(3q)
  Rational constant;             // nu^2/(1-nu)
  std::vector<LPRow> rows;       // q pair rows, q doubling rows, sum row, extras
  std::vector<Interval> cosines; // cos(2 pi j / q), j = 0..q-1
};

// Assembles the primal problem.  Coefficients of coincident indices merge
// (l = 0 gives pair rows 2 beta_j <= 1; j = 0 gives doubling row 2 beta_0).
// Preconditions: q = 1 (mod 6), 0 <= l <= k, every extra row nonempty.
LPProblem build_primal(long long q, long long l,
                       const std::vector<ExtraRow>& extras = {},
                       int bits = 64);

// Enclosure of M(beta) for an explicit point; beta has q entries >= 0.
Interval objective_value(const LPProblem& p, const std::vector<Rational>& beta);

// A weak-duality certificate.  Feasibility of the dual values means
//
//   tau - lambda_j - lambda_{j-l} - mu_j - mu_{j/2}
//       - sum_t theta_t * extra_t.coeffs[j]  <=  cos(2 pi j / q)
//
// for every j = 1..q (j - l and j/2 taken mod q; q odd makes j/2 well
// defined), and then
//
//   M >= (1/q) (tau (nu_q - eta) q - sum lambda - sum mu
//               - sum_t theta_t * extra_t.rhs) + nu_q^2/(1 - nu_q)
//
// holds for every feasible beta.  lambda_i multiplies the pair row
// beta_i + beta_{i+l} <= 1 and mu_i the doubling row beta_i + beta_{2i} <= 1.
struct DualCertificate {
  long long q = 0;
  long long l = 0;
  Rational tau;
  std::map<long long, Rational> lambda;  // sparse; keys mod q (q = 0)
  std::map<long long, Rational> mu;
  std::vector<Rational> theta;           // one per extra row (missing = 0)
  std::vector<ExtraRow> extras;
  Rational claimed;                      // the bound this certificate asserts
};

// Non-throwing feasibility check.  margins[j-1] = lo(cos(2 pi j / q)) - LHS_j
// for j = 1..q; the certificate is feasible iff every margin is >= 0.
// `certified` is the exact dual objective (the M lower bound); it is a valid
// bound only when `feasible` is true.
struct CertCheck {
  bool feasible = false;
  Rational certified;
  std::vector<Rational> margins;
  Rational max_violation;  // max(0, -min margin)
};
CertCheck check_certificate(const DualCertificate& cert, int bits = 64);

// Throwing wrapper: errc::infeasible if any row fails, errc::bound_shortfall
// if the certified bound is below cert.claimed.
struct VerifyResult {
  Rational certified;
  std::vector<Rational> margins;
};
VerifyResult verify_dual_certificate(const DualCertificate& cert, int bits = 64);

// Restores rigorous feasibility of a certificate whose values were rounded
// for printing: decreases tau by the maximum violation plus one ulp (2^-bits).
// Every margin grows by the same amount, so one pass suffices.  No-op when
// already feasible.
DualCertificate repair_certificate(const DualCertificate& cert, int bits = 64);

// Regenerates a certificate from scratch: exact-rational two-phase simplex
// (Bland's rule, guaranteed termination) on the dual problem with the cosine
// right-hand sides rounded *down* to dyadics, so the result is rigorously
// feasible for the true cosines.  Throws errc::bound_shortfall (message
// carries the achieved bound) if the optimum is below `target`.
DualCertificate solve_and_certify(long long q, long long l,
                                  const std::vector<ExtraRow>& extras,
                                  const Rational& target, int bits = 64);

// Closed form for E(0), the minimum of sum_j gamma_j cos((2j + l) pi / q)
// over 0 <= gamma_j <= 1/2, sum gamma_j >= 2k.  Depends only on the parity
// of l:
//   even:  -sin(4 k pi / q) / (2 sin(pi / q))
//   odd:   -sin((4k-1) pi / q) / (2 sin(pi / q)) - cos(4 k pi / q) / 2
Interval closed_form_E0(long long q, bool l_odd, int bits = 64);

// Closed-form lower bound for the primal minimum:
//   M >= E(0) / (q cos(pi l / q)) + nu_q^2/(1 - nu_q) - 6 eta.
Interval closed_form_M_bound(long long q, long long l, int bits = 64);

// Sweeps every q = 1 (mod 6) with all prime factors = 1 (mod 3) (the q that
// occur as exponents of type III groups) up to q_max, and every l in {0..k},
// evaluating closed_form_M_bound.  A pair fails when the bound cannot certify
// M >= eta.  Failing q are collected per category of l:
//   low:  some l <= max(0, k-2) fails   (k = 1 folds l = 0 into this band)
//   mid:  l = k-1 fails
//   high: l = k fails
struct SweepResult {
  std::vector<long long> low, mid, high;
};
SweepResult sweep_closed_form(long long q_max, int bits = 64);

// Replays the bundled certificate set for one of the three exceptional
// primes (7, 13, 19) from JSON files in cert_dir.  Each sub-case is verified
// as stored; if rounding slop breaks a row it is tau-repaired; if the
// repaired bound falls short of the claim the certificate is regenerated with
// solve_and_certify.  For q = 7 the hand computation that eliminates the
// beta_1 = beta_6 = 0 sub-case is checked as an exact rational identity:
// 32/7 + 8/7 + 8/7 + 1 = 55/7 = 4 (2 - 1/28).
struct CaseResult {
  std::string name;   // file stem, e.g. "q19_l3_case1"
  long long q = 0;
  long long l = 0;
  Rational claimed;
  Rational certified;
  bool repaired = false;
  bool regenerated = false;
};
std::vector<CaseResult> case_analysis(long long q, const std::string& cert_dir,
                                      int bits = 64);

// Density bound for type III groups: if A has at most delta n^2 Schur
// triples with delta <= 2^-93 m^-5 (m the exponent), then
// |A| <= (nu(G) + 64 m^(2/3) delta^(1/3)) n.  `ok` is the certified
// comparison (a theorem, so it must come out true); `combined_ok` is the
// unconditional |A| <= (nu(G) + 2^20 delta^(1/5)) n check.
struct TypeIIIStability {
  Rational delta;
  long long size = 0;
  Interval rhs;        // (nu + 64 m^(2/3) delta^(1/3)) n
  bool ok = false;
  bool combined_ok = false;
};
TypeIIIStability verify_typeIII_stability(const Group& g,
                                          const std::vector<long long>& a,
                                          int bits = 64);

// --- certificate (de)serialization -------------------------------------
//
// JSON schema:
//   {"q":73,"l":12,"tau":"0.512","lambda":{"13":"0.072",...},"mu":{...},
//    "theta":["0.630"],"extras":[{"coeffs":{"7":2,"14":1},"rhs":"4/3"}],
//    "claimed":"0.01"}
// Value strings are parsed as exact rationals ("0.512" = 512/1000, "4/3");
// integer JSON numbers are accepted where they are exact.

DualCertificate certificate_from_json(const std::string& text);
std::string certificate_to_json(const DualCertificate& cert);
DualCertificate load_certificate(const std::string& path);
void save_certificate(const DualCertificate& cert, const std::string& path);

}  // namespace sumfree
