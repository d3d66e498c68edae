/* C interface to the sum-free set toolkit.
 *
 * Every operation fills *out_json with a heap-allocated, NUL-terminated JSON
 * document describing the result (free it with sf_string_free) and returns a
 * status code.  SF_OK means the operation ran and its verdict is positive.
 * SF_CHECK_FAILED still produces the JSON report when the operation ran to
 * completion with a negative verdict; every other failure leaves *out_json
 * untouched.  In all failure cases sf_last_error() / sf_last_error_name()
 * describe what went wrong for the calling thread.  All functions are
 * thread-safe as long as each sf_group instance is confined to one thread at
 * a time.
 *
 * Rational quantities are serialized as exact strings ("2/7", "0.512" inputs
 * are accepted wherever a rational parameter is taken); element sets are
 * arrays of 0-based element indices in the mixed-radix indexing documented in
 * the JSON payloads themselves.
 */
#ifndef SUMFREE_CAPI_H
#define SUMFREE_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; they double as the CLI exit codes. */
enum {
  SF_OK = 0,           /* operation ran and every check passed */
  SF_CHECK_FAILED = 1, /* a verification, bound, or search came up short */
  SF_USAGE = 2,        /* malformed group spec, set, file, or parameter */
  SF_BUDGET = 3,       /* node or size budget exhausted before completion */
  SF_INTERNAL = 4      /* library invariant violated; please report */
};

/* A finite abelian group Z/d1 x ... x Z/dk, parsed from "d1xd2x...xdk". */
typedef struct sf_group sf_group;

/* Returns NULL on parse failure (see sf_last_error). */
sf_group* sf_group_parse(const char* spec);
void sf_group_free(sf_group* g);
/* Order and exponent of the group; 0 when g is NULL. */
long long sf_group_order(const sf_group* g);
long long sf_group_exponent(const sf_group* g);

/* Thread-local description of the most recent failure. */
const char* sf_last_error(void);      /* human-readable message */
const char* sf_last_error_name(void); /* taxonomy label, e.g. "infeasible" */

void sf_string_free(char* s);
const char* sf_version(void);

/* Classification: type I(p) / II / III and the extremal density nu(G). */
int sf_classify(const sf_group* g, char** out_json);

/* Exact maximum sum-free set size by branch and bound, compared against
 * nu(G) * n.  max_n / max_nodes of 0 mean the library defaults. */
int sf_mu(const sf_group* g, long long max_n, unsigned long long max_nodes,
          char** out_json);

/* Exact count of sum-free subsets (the empty set included) and the density
 * exponent sigma = log2(count)/n. */
int sf_count(const sf_group* g, long long max_n, unsigned long long max_nodes,
             char** out_json);

/* The canonical extremal sum-free set and its verification. */
int sf_construct(const sf_group* g, char** out_json);

/* Special-direction coset density profile of a set. */
int sf_profile(const sf_group* g, const long long* set, long long len,
               char** out_json);

/* The popular-sums inequality
 *   sum_x min(t, r_{A,B}(x)) >= t * min(n, |A| + |B| - D - t)
 * for explicit A, B and threshold t >= 1. */
int sf_verify_kp(const sf_group* g, const long long* a, long long a_len,
                 const long long* b, long long b_len, long long t,
                 char** out_json);

/* Structural covers of a sum-free set with |A| > n/3: the stabilizer
 * (Kneser) quotient cover, and for type I(p) groups above the threshold
 * density also the mod-p interval cover. */
int sf_cover(const sf_group* g, const long long* set, long long len,
             char** out_json);

/* Granular decomposition of a sum-free set: removes at most eps*n/4 points
 * so that the rest is a union of subgroup cosets or of L-term progression
 * grains; eps is a rational string, 0 < eps < 1/2. */
int sf_granularize(const sf_group* g, const long long* set, long long len,
                   long long L, long long L_prime, const char* eps,
                   char** out_json);

/* Load a dual certificate from a JSON file and check it row by row against
 * interval cosine enclosures with `bits` fractional bits (0 = default 64).
 * allow_repair != 0 permits the tau-repair of an infeasible certificate
 * before the final verdict.  SF_OK iff the (possibly repaired) certificate
 * is feasible and certifies at least its claimed bound. */
int sf_lp_verify(const char* cert_path, int bits, int allow_repair,
                 char** out_json);

/* Solve the dual program exactly for (q, l) plus optional extra rows (JSON
 * array text, e.g. [{"coeffs":{"7":2,"14":1},"rhs":"4/3"}]; NULL or ""
 * for none) and emit a certificate whose bound is at least `target` (a
 * rational string).  SF_CHECK_FAILED with a bound_shortfall error when the
 * optimum falls short. */
int sf_lp_solve(long long q, long long l, const char* extras_json,
                const char* target, int bits, char** out_json);

/* Closed-form scan of q = 1 (mod 6), all prime factors = 1 (mod 3),
 * 7 <= q <= q_max: reports the q for which the cosine bound fails at some
 * l <= k-2, at l = k-1, and at l = k. */
int sf_lp_sweep(long long q_max, int bits, char** out_json);

/* Replay the full certificate case analysis for q = 7, 13, or 19 from the
 * certificate directory: check as shipped, tau-repair, and regenerate by
 * exact simplex when the shipped values cannot reach the claim. */
int sf_case_analysis(long long q, const char* cert_dir, int bits,
                     char** out_json);

/* End-to-end reproduction suites over the shipped data:
 *   "certificates"  - every certificate certifies its claimed bound;
 *   "sweep"         - the closed-form scan to 1000 matches the frozen lists;
 *   "mu-census"     - mu = nu * n for every abelian group of order 2..40;
 *   "kp-exhaustive" - the popular-sums inequality, exhaustively on orders
 *                     <= 7 and on seeded random instances up to order 16.
 * data_dir is the directory holding certificates/ (unused by targets that
 * need no data files). */
int sf_repro(const char* target, const char* data_dir,
             unsigned long long seed, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SUMFREE_CAPI_H */
