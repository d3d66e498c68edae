#include "sumfree/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace sumfree {

long long smallest_prime_factor(long long n) {
  if (n <= 1) return 1;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

std::vector<std::pair<long long, long long>> factorize(long long n) {
  std::vector<std::pair<long long, long long>> out;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      long long e = 0;
      while (n % d == 0) n /= d, ++e;
      out.emplace_back(d, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Group Group::parse(const std::string& spec, long long order_budget) {
  if (spec.empty()) throw sf_error(errc::invalid_spec, "empty group spec");
  std::vector<long long> factors;
  size_t pos = 0;
  for (;;) {
    size_t next = spec.find('x', pos);
    std::string tok = spec.substr(pos, next == std::string::npos ? next : next - pos);
    if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos)
      throw sf_error(errc::invalid_spec, "bad group spec token: '" + tok + "' in " + spec);
    factors.push_back(std::stoll(tok));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return Group(std::move(factors), order_budget);
}

Group::Group(std::vector<long long> factors, long long order_budget) : factors_(std::move(factors)) {
  if (factors_.empty()) throw sf_error(errc::invalid_spec, "no cyclic factors");
  if (factors_.size() == 1 && factors_[0] == 1) {
    // trivial group
  } else {
    for (long long d : factors_)
      if (d < 2) throw sf_error(errc::invalid_spec, "cyclic factor < 2");
  }
  for (long long d : factors_) {
    if (n_ > order_budget / d)
      throw sf_error(errc::budget_exceeded, "group order exceeds budget");
    n_ *= d;
    exponent_ = std::lcm(exponent_, d);
  }
  stride_.assign(factors_.size(), 1);
  for (int j = (int)factors_.size() - 2; j >= 0; --j) stride_[j] = stride_[j + 1] * factors_[j + 1];
  weight_.reserve(factors_.size());
  for (long long d : factors_) weight_.push_back(exponent_ / d);

  neg_table_.resize(n_);
  for (long long x = 0; x < n_; ++x) {
    long long r = 0, v = x;
    for (size_t j = 0; j < factors_.size(); ++j) {
      long long xj = v / stride_[j];
      v %= stride_[j];
      r += ((factors_[j] - xj) % factors_[j]) * stride_[j];
    }
    neg_table_[x] = (int)r;
  }
  if (n_ <= 1024) {
    add_table_.resize(n_ * n_);
    std::vector<long long> cx(factors_.size());
    for (long long x = 0; x < n_; ++x) {
      long long v = x;
      for (size_t j = 0; j < factors_.size(); ++j) cx[j] = v / stride_[j], v %= stride_[j];
      for (long long y = 0; y < n_; ++y) {
        long long w = y, r = 0;
        for (size_t j = 0; j < factors_.size(); ++j) {
          long long yj = w / stride_[j];
          w %= stride_[j];
          r += ((cx[j] + yj) % factors_[j]) * stride_[j];
        }
        add_table_[x * n_ + y] = (int)r;
      }
    }
  }
}

std::string Group::spec_string() const {
  std::string s;
  for (size_t j = 0; j < factors_.size(); ++j) {
    if (j) s += 'x';
    s += std::to_string(factors_[j]);
  }
  return s;
}

std::vector<long long> Group::coords(long long x) const {
  std::vector<long long> c(factors_.size());
  for (size_t j = 0; j < factors_.size(); ++j) c[j] = x / stride_[j], x %= stride_[j];
  return c;
}

long long Group::from_coords(const std::vector<long long>& c) const {
  long long x = 0;
  for (size_t j = 0; j < factors_.size(); ++j) x += (c[j] % factors_[j]) * stride_[j];
  return x;
}

long long Group::add_slow(long long x, long long y) const {
  long long r = 0;
  for (size_t j = 0; j < factors_.size(); ++j) {
    long long xj = x / stride_[j], yj = y / stride_[j];
    x %= stride_[j];
    y %= stride_[j];
    r += ((xj + yj) % factors_[j]) * stride_[j];
  }
  return r;
}

long long Group::scalar_mul(long long k, long long x) const {
  long long r = 0;
  for (size_t j = 0; j < factors_.size(); ++j) {
    long long xj = x / stride_[j];
    x %= stride_[j];
    long long kj = ((k % factors_[j]) + factors_[j]) % factors_[j];
    r += (kj * xj % factors_[j]) * stride_[j];
  }
  return r;
}

long long Group::element_order(long long x) const {
  long long ord = 1;
  for (size_t j = 0; j < factors_.size(); ++j) {
    long long xj = x / stride_[j];
    x %= stride_[j];
    ord = std::lcm(ord, factors_[j] / std::gcd(factors_[j], xj));
  }
  return ord;
}

long long Group::pairing(long long a, long long x) const {
  unsigned __int128 acc = 0;
  for (size_t j = 0; j < factors_.size(); ++j) {
    long long aj = a / stride_[j], xj = x / stride_[j];
    a %= stride_[j];
    x %= stride_[j];
    acc += (unsigned __int128)(aj * xj % exponent_) * weight_[j];
  }
  return (long long)(acc % (unsigned __int128)exponent_);
}

std::vector<long long> Group::canonical_factors() const {
  // Gather, per prime, the exponents of the primary cyclic parts, sorted
  // descending; invariant factor #i (from the largest) multiplies the i-th
  // largest exponent of every prime.
  std::map<long long, std::vector<long long>> primary;
  for (long long d : factors_)
    for (auto [p, e] : factorize(d)) primary[p].push_back(e);
  size_t r = 0;
  for (auto& [p, es] : primary) {
    std::sort(es.rbegin(), es.rend());
    r = std::max(r, es.size());
  }
  if (r == 0) return {1};
  std::vector<long long> inv(r, 1);
  for (auto& [p, es] : primary)
    for (size_t i = 0; i < es.size(); ++i) {
      long long pe = 1;
      for (long long t = 0; t < es[i]; ++t) pe *= p;
      inv[i] *= pe;
    }
  std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
  return inv;
}

std::string Group::canonical_spec() const {
  auto inv = canonical_factors();
  std::string s;
  for (size_t j = 0; j < inv.size(); ++j) {
    if (j) s += 'x';
    s += std::to_string(inv[j]);
  }
  return s;
}

Subgroup closure(const Group& g, const std::vector<long long>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<long long> members{0};
  in[0] = 1;
  std::queue<long long> bfs;
  for (long long x : gens)
    if (!in[x]) in[x] = 1, members.push_back(x), bfs.push(x);
  // Finite abelian: closing under "+generator" from 0 reaches the whole
  // subgroup (inverses arrive via the element orders).
  size_t head = 0;
  while (head < members.size()) {
    long long u = members[head++];
    for (long long x : gens) {
      long long v = g.add(u, x);
      if (!in[v]) in[v] = 1, members.push_back(v);
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{members};
}

bool is_subgroup(const Group& g, const std::vector<long long>& elements) {
  std::vector<char> in(g.order(), 0);
  for (long long x : elements) {
    if (x < 0 || x >= g.order()) return false;
    in[x] = 1;
  }
  if (!in[0]) return false;
  for (long long x : elements)
    for (long long y : elements)
      if (!in[g.add(x, y)]) return false;
  return true;
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, long long max_count) {
  std::set<std::vector<long long>> seen;
  std::queue<std::vector<long long>> work;
  auto trivial = closure(g, {});
  seen.insert(trivial.elements);
  work.push(trivial.elements);
  while (!work.empty()) {
    auto h = std::move(work.front());
    work.pop();
    std::vector<char> in(g.order(), 0);
    for (long long x : h) in[x] = 1;
    for (long long x = 1; x < g.order(); ++x) {
      if (in[x]) continue;
      auto ext = h;
      ext.push_back(x);
      auto hh = closure(g, ext);
      if (seen.insert(hh.elements).second) {
        if ((long long)seen.size() > max_count)
          throw sf_error(errc::budget_exceeded, "subgroup enumeration budget exceeded");
        work.push(hh.elements);
      }
    }
  }
  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (auto& e : seen) out.push_back(Subgroup{e});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });
  return out;
}

long long defect(const Group& g) {
  if (g.order() == 1) return 1;
  return g.order() / smallest_prime_factor(g.order());
}

Rational lambda_ratio(const Group& g) { return Rational(defect(g), g.order()); }

namespace {

// Smith normal form with row-transform tracking: returns U (r x r) and the
// diagonal (divisibility chain) of U*M*V.
struct SnfResult {
  std::vector<std::vector<Int>> U;
  std::vector<Int> diag;
};

SnfResult snf(std::vector<std::vector<Int>> M) {
  size_t r = M.size(), c = M[0].size();
  std::vector<std::vector<Int>> U(r, std::vector<Int>(r, 0));
  for (size_t i = 0; i < r; ++i) U[i][i] = 1;

  auto row_sub = [&](size_t i, size_t t, const Int& q) {
    for (size_t j = 0; j < c; ++j) M[i][j] -= q * M[t][j];
    for (size_t j = 0; j < r; ++j) U[i][j] -= q * U[t][j];
  };

  for (size_t t = 0; t < r; ++t) {
    for (;;) {
      // pick pivot: nonzero entry of minimal magnitude in the working block
      size_t pi = t, pj = t;
      Int best = 0;
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j)
          if (M[i][j] != 0 && (best == 0 || abs(M[i][j]) < best)) best = abs(M[i][j]), pi = i, pj = j;
      if (best == 0) throw sf_error(errc::internal, "rank-deficient relation matrix");
      if (pi != t) {
        std::swap(M[pi], M[t]);
        std::swap(U[pi], U[t]);
      }
      if (pj != t)
        for (size_t i = 0; i < r; ++i) std::swap(M[i][pj], M[i][t]);

      bool clean = true;
      for (size_t i = t + 1; i < r; ++i)
        if (M[i][t] != 0) {
          Int q = M[i][t] / M[t][t];
          row_sub(i, t, q);
          if (M[i][t] != 0) clean = false;
        }
      for (size_t j = t + 1; j < c; ++j)
        if (M[t][j] != 0) {
          Int q = M[t][j] / M[t][t];
          if (q != 0)
            for (size_t i = 0; i < r; ++i) M[i][j] -= q * M[i][t];
          if (M[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      // pivot must divide every remaining entry; if not, fold that row in
      bool divides = true;
      for (size_t i = t + 1; i < r && divides; ++i)
        for (size_t j = t + 1; j < c && divides; ++j)
          if (M[i][j] % M[t][t] != 0) {
            for (size_t jj = 0; jj < c; ++jj) M[t][jj] += M[i][jj];
            for (size_t jj = 0; jj < r; ++jj) U[t][jj] += U[i][jj];
            divides = false;
          }
      if (divides) break;
    }
    if (M[t][t] < 0) {
      for (size_t j = 0; j < c; ++j) M[t][j] = -M[t][j];
      for (size_t j = 0; j < r; ++j) U[t][j] = -U[t][j];
    }
  }
  SnfResult res;
  res.U = std::move(U);
  res.diag.resize(r);
  for (size_t t = 0; t < r; ++t) res.diag[t] = M[t][t];
  return res;
}

}  // namespace

QuotientMap quotient(const Group& g, const Subgroup& h) {
  if (!is_subgroup(g, h.elements))
    throw sf_error(errc::invalid_subgroup, "quotient by a non-subgroup");
  size_t r = g.factors().size();
  // Relation matrix of G/H on the r ambient generators: the cyclic orders
  // plus one column per subgroup element (its coordinate vector).
  std::vector<std::vector<Int>> M(r, std::vector<Int>(r + h.elements.size(), 0));
  for (size_t i = 0; i < r; ++i) M[i][i] = g.factors()[i];
  for (size_t s = 0; s < h.elements.size(); ++s) {
    auto cs = g.coords(h.elements[s]);
    for (size_t i = 0; i < r; ++i) M[i][r + s] = cs[i];
  }
  auto res = snf(std::move(M));

  std::vector<long long> qfactors;
  std::vector<size_t> kept;
  for (size_t t = 0; t < r; ++t) {
    long long d = (long long)res.diag[t];
    if (d >= 2) qfactors.push_back(d), kept.push_back(t);
  }
  if (qfactors.empty()) qfactors = {1};
  Group q(qfactors);

  std::vector<long long> image(g.order());
  for (long long x = 0; x < g.order(); ++x) {
    auto cx = g.coords(x);
    std::vector<long long> y;
    y.reserve(kept.size());
    for (size_t idx = 0; idx < kept.size(); ++idx) {
      size_t t = kept[idx];
      Int acc = 0;
      for (size_t j = 0; j < r; ++j) acc += res.U[t][j] * cx[j];
      Int m = acc % res.diag[t];
      if (m < 0) m += res.diag[t];
      y.push_back((long long)m);
    }
    image[x] = kept.empty() ? 0 : q.from_coords(y);
  }

  // The kernel must be exactly H.
  std::vector<char> inh(g.order(), 0);
  for (long long e : h.elements) inh[e] = 1;
  for (long long x = 0; x < g.order(); ++x)
    if ((image[x] == 0) != (bool)inh[x])
      throw sf_error(errc::internal, "quotient projection kernel mismatch");

  return QuotientMap{std::move(q), std::move(image)};
}

std::vector<HomZp> homs_to_Zp(const Group& g, long long p) {
  if (p < 2 || smallest_prime_factor(p) != p)
    throw sf_error(errc::invalid_argument, "homs_to_Zp requires prime p");
  std::vector<size_t> free_coords;
  for (size_t j = 0; j < g.factors().size(); ++j)
    if (g.factors()[j] % p == 0) free_coords.push_back(j);
  std::vector<HomZp> out;
  long long total = 1;
  for (size_t i = 0; i < free_coords.size(); ++i) total *= p;
  for (long long code = 0; code < total; ++code) {
    HomZp psi;
    psi.p = p;
    psi.coeffs.assign(g.factors().size(), 0);
    long long v = code;
    for (size_t i = 0; i < free_coords.size(); ++i) {
      psi.coeffs[free_coords[i]] = v % p;
      v /= p;
    }
    out.push_back(std::move(psi));
  }
  return out;
}

long long eval_hom(const Group& g, const HomZp& psi, long long x) {
  auto cx = g.coords(x);
  long long acc = 0;
  for (size_t j = 0; j < cx.size(); ++j) acc = (acc + psi.coeffs[j] % psi.p * (cx[j] % psi.p)) % psi.p;
  return acc;
}

}  // namespace sumfree
