#include "sumfree/sumfree.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "sumfree/interval.hpp"

namespace sumfree {

const char* type_name(GroupType t) {
  switch (t) {
    case GroupType::I: return "I";
    case GroupType::II: return "II";
    case GroupType::III: return "III";
  }
  return "?";
}

Classification classify(const Group& g) {
  long long n = g.order();
  long long best_p = 0;
  for (auto [p, e] : factorize(n)) {
    (void)e;
    if (p % 3 == 2 && (best_p == 0 || p < best_p)) best_p = p;
  }
  if (best_p != 0)
    return {GroupType::I, best_p, Rational(1, 3) + Rational(1, 3 * best_p)};
  if (n % 3 == 0) return {GroupType::II, 3, Rational(1, 3)};
  long long m = g.exponent();
  return {GroupType::III, m, Rational(1, 3) - Rational(1, 3 * m)};
}

Rational nu(const Group& g) { return classify(g).nu; }

long long schur_triples(const Group& g, const std::vector<long long>& a) {
  std::vector<char> in(g.order(), 0);
  for (long long x : a) in[x] = 1;
  long long count = 0;
  for (long long x : a)
    for (long long y : a)
      if (in[g.add(x, y)]) ++count;
  return count;
}

bool is_sum_free(const Group& g, const std::vector<long long>& a) {
  return schur_triples(g, a) == 0;
}

namespace {

// Extended gcd for the CRT combination in construct_extremal.
long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long d = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return d;
}

long long inv_mod(long long a, long long m) {
  long long x, y;
  long long d = egcd(((a % m) + m) % m, m, x, y);
  if (d != 1) throw sf_error(errc::internal, "not invertible");
  return ((x % m) + m) % m;
}

}  // namespace

std::vector<long long> construct_extremal(const Group& g) {
  auto cls = classify(g);
  long long q = cls.type == GroupType::II ? 3 : cls.parameter;
  long long n = g.order();

  // Surjection psi: G -> Z/q.  For q = p prime: x_i mod p on a coordinate
  // with p | d_i.  For q = m (type III): CRT over the primary parts of m,
  // each served by a coordinate whose order that prime power divides.
  std::vector<long long> psi_of(n, 0);
  if (q == 1) {
    // trivial group: extremal set is empty
  } else {
    struct Part {
      long long pe, coord;
    };
    std::vector<Part> parts;
    for (auto [p, e] : factorize(q)) {
      long long pe = 1;
      for (long long t = 0; t < e; ++t) pe *= p;
      long long coord = -1;
      for (size_t j = 0; j < g.factors().size(); ++j)
        if (g.factors()[j] % pe == 0) {
          coord = (long long)j;
          break;
        }
      if (coord < 0) throw sf_error(errc::internal, "no coordinate realizes prime power");
      parts.push_back({pe, coord});
    }
    for (long long x = 0; x < n; ++x) {
      auto cx = g.coords(x);
      __int128 v = 0;
      for (auto& part : parts) {
        long long residue = cx[part.coord] % part.pe;
        long long M = q / part.pe;
        v = (v + (__int128)residue * M % q * inv_mod(M % part.pe, part.pe)) % q;
      }
      psi_of[x] = (long long)v;
    }
  }

  std::vector<long long> a;
  for (long long x = 0; x < n; ++x) {
    long long t = psi_of[x];
    if (q < 3 * t && 3 * t <= 2 * q) a.push_back(x);
  }

  Rational expect = nu(g) * n;
  if (Rational((long long)a.size()) != expect || schur_triples(g, a) != 0)
    throw sf_error(errc::internal, "extremal construction failed postcondition");
  return a;
}

// ---------------------------------------------------------------------------
// Exact searches.  Both work in 64-bit element masks, so n <= 64.

namespace {

struct Tables {
  long long n;
  // tri[c][a]: elements {c+a, c-a, a-c}; halve[c]: {y != 0 : 2y = c}.
  std::vector<uint64_t> tri;  // n*n
  std::vector<uint64_t> halve;

  Tables(const Group& g) : n(g.order()), tri(n * n, 0), halve(n, 0) {
    for (long long c = 0; c < n; ++c) {
      for (long long a = 0; a < n; ++a) {
        uint64_t m = 0;
        m |= 1ull << g.add(c, a);
        m |= 1ull << g.sub(c, a);
        m |= 1ull << g.sub(a, c);
        tri[c * n + a] = m;
      }
      for (long long y = 1; y < n; ++y)
        if (g.add(y, y) == c) halve[c] |= 1ull << y;
    }
  }
};

struct MuSearch {
  const Tables& tab;
  const std::vector<long long>& order;  // branching priority
  unsigned long long nodes = 0, max_nodes;
  long long best = -1;
  std::vector<long long> best_set, cur;

  MuSearch(const Tables& t, const std::vector<long long>& ord, unsigned long long mn)
      : tab(t), order(ord), max_nodes(mn) {}

  void dfs(uint64_t cand) {
    ++nodes;
    if (max_nodes && nodes > max_nodes)
      throw sf_error(errc::budget_exceeded, "mu_exact node budget exceeded");
    if ((long long)cur.size() > best) {
      best = (long long)cur.size();
      best_set = cur;
    }
    if ((long long)cur.size() + (long long)__builtin_popcountll(cand) <= best) return;
    long long c = -1;
    for (long long v : order)
      if (cand >> v & 1) {
        c = v;
        break;
      }
    if (c < 0) return;
    // include c
    uint64_t f = tab.halve[c] | tab.tri[c * tab.n + c];
    for (long long a : cur) f |= tab.tri[c * tab.n + a];
    cur.push_back(c);
    dfs(cand & ~f & ~(1ull << c));
    cur.pop_back();
    // exclude c
    dfs(cand & ~(1ull << c));
  }
};

struct CountSearch {
  const Tables& tab;
  unsigned long long nodes = 0, max_nodes;
  unsigned long long count = 0;
  std::vector<long long> cur;

  CountSearch(const Tables& t, unsigned long long mn) : tab(t), max_nodes(mn) {}

  // cand holds only indices > max(cur) that are compatible with cur.
  void dfs(uint64_t cand) {
    ++nodes;
    if (max_nodes && nodes > max_nodes)
      throw sf_error(errc::budget_exceeded, "count_sf node budget exceeded");
    ++count;
    while (cand) {
      long long c = __builtin_ctzll(cand);
      cand &= cand - 1;
      uint64_t f = tab.halve[c] | tab.tri[c * tab.n + c];
      for (long long a : cur) f |= tab.tri[c * tab.n + a];
      uint64_t above = c == 63 ? 0 : ~0ull << (c + 1);
      cur.push_back(c);
      dfs(cand & above & ~f);
      cur.pop_back();
    }
  }
};

}  // namespace

MuResult mu_exact(const Group& g, const SearchBudget& budget) {
  long long n = g.order();
  if (n > budget.max_n_mu || n > 64)
    throw sf_error(errc::budget_exceeded, "mu_exact order exceeds budget");
  Tables tab(g);

  // conflict degree: number of Schur triples over G that mention the element
  std::vector<long long> deg(n, 0);
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y) {
      long long z = g.add(x, y);
      ++deg[x];
      ++deg[y];
      ++deg[z];
    }
  std::vector<long long> order;
  for (long long v = 1; v < n; ++v) order.push_back(v);
  std::stable_sort(order.begin(), order.end(),
                   [&](long long a, long long b) { return deg[a] > deg[b]; });

  MuSearch search(tab, order, budget.max_nodes);
  uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  search.dfs(all & ~1ull);  // 0 is never sum-free-compatible (0+0=0)
  MuResult res;
  res.mu_n = search.best;
  res.witness = search.best_set;
  std::sort(res.witness.begin(), res.witness.end());
  res.nodes = search.nodes;
  return res;
}

Int count_sf(const Group& g, const SearchBudget& budget) {
  long long n = g.order();
  if (n > budget.max_n_count || n > 64)
    throw sf_error(errc::budget_exceeded, "count_sf order exceeds budget");
  Tables tab(g);
  CountSearch search(tab, budget.max_nodes);
  uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  search.dfs(all & ~1ull);
  return Int(search.count);
}

Int count_sf_naive(const Group& g) {
  long long n = g.order();
  if (n > 24) throw sf_error(errc::budget_exceeded, "count_sf_naive needs n <= 24");
  Int total = 0;
  for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
    bool ok = true;
    for (long long x = 0; x < n && ok; ++x) {
      if (!(mask >> x & 1)) continue;
      for (long long y = x; y < n && ok; ++y) {
        if (!(mask >> y & 1)) continue;
        if (mask >> g.add(x, y) & 1) ok = false;
      }
    }
    if (ok) ++total;
  }
  return total;
}

std::string sigma_decimal(const Group& g, const Int& count, int digits) {
  using BF = boost::multiprecision::cpp_bin_float_100;
  if (count <= 0) throw sf_error(errc::invalid_argument, "sigma of nonpositive count");
  BF lg = log2(BF(count)) / BF(g.order());
  std::ostringstream os;
  os << std::setprecision(digits) << lg;
  return os.str();
}

double sigma_double(const Group& g, const Int& count) {
  using BF = boost::multiprecision::cpp_bin_float_100;
  return (double)(log2(BF(count)) / BF(g.order()));
}

Int main_term_typeIp(const Group& g) {
  auto cls = classify(g);
  if (cls.type != GroupType::I)
    throw sf_error(errc::not_applicable, "main term formula applies to type I only");
  long long p = cls.parameter;
  long long cp = 0;
  for (long long x = 0; x < g.order(); ++x)
    if (g.element_order(x) == p) ++cp;
  Rational exp_r = cls.nu * g.order();
  if (denominator(exp_r) != 1) throw sf_error(errc::internal, "nu*n not integral for type I");
  long long e = (long long)numerator(exp_r);
  Int pow = Int(1) << e;
  if (p == 2) return Int(cp) * pow;
  // W = 1/2; nu*n >= 1 whenever the group is nontrivial, so this divides.
  return Int(cp) * (pow >> 1);
}

Rational stability_bound(const Group& g, const Rational& delta, int bits) {
  if (delta < 0) throw sf_error(errc::invalid_argument, "negative delta");
  Interval root = root_enclosure(delta, 5, bits);
  return nu(g) + pow2(20) * root.hi;
}

}  // namespace sumfree
