#include "sumfree/report.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

#include "sumfree/granularize.hpp"
#include "sumfree/lp.hpp"
#include "sumfree/structure.hpp"

namespace sumfree {

namespace {

double approx(const Rational& r) { return r.convert_to<double>(); }

ojson set_array(const std::vector<long long>& v) {
  ojson a = ojson::array();
  for (long long x : v) a.push_back(x);
  return a;
}

ojson rational_array(const std::vector<Rational>& v) {
  ojson a = ojson::array();
  for (const auto& r : v) a.push_back(rational_string(r));
  return a;
}

// nu(G) * n is an exact integer for every type (the numerators are arranged
// to be divisible); rendered as such.
long long nu_times_n(const Group& g) {
  Rational r = nu(g) * g.order();
  if (denominator(r) != 1)
    throw sf_error(errc::internal, "nu * n is not integral");
  return numerator(r).convert_to<long long>();
}

// One isomorphism class per abelian group of order 2..max_n: the cyclic
// factors are prime powers, one partition of each prime's exponent.
void partitions(long long e, long long cap, std::vector<long long>& cur,
                std::vector<std::vector<long long>>& out) {
  if (e == 0) {
    out.push_back(cur);
    return;
  }
  for (long long part = std::min(e, cap); part >= 1; --part) {
    cur.push_back(part);
    partitions(e - part, part, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<long long>> abelian_factor_lists(long long n) {
  std::vector<std::vector<long long>> lists = {{}};
  for (const auto& [p, e] : factorize(n)) {
    std::vector<std::vector<long long>> parts;
    std::vector<long long> cur;
    partitions(e, e, cur, parts);
    std::vector<std::vector<long long>> next;
    for (const auto& base : lists)
      for (const auto& part : parts) {
        std::vector<long long> f = base;
        for (long long exp1 : part) {
          long long pw = 1;
          for (long long i = 0; i < exp1; ++i) pw *= p;
          f.push_back(pw);
        }
        next.push_back(std::move(f));
      }
    lists = std::move(next);
  }
  return lists;
}

ojson certificate_case(const std::string& name, const DualCertificate& cert,
                       bool repaired, bool regenerated, bool ok,
                       const Rational& certified) {
  ojson c;
  c["name"] = name;
  c["q"] = cert.q;
  c["l"] = cert.l;
  c["claimed"] = rational_string(cert.claimed);
  c["certified"] = rational_string(certified);
  c["certified_approx"] = approx(certified);
  c["repaired"] = repaired;
  c["regenerated"] = regenerated;
  c["ok"] = ok;
  return c;
}

ojson repro_certificates(const std::string& data_dir) {
  const std::string dir = data_dir + "/certificates";
  const std::vector<std::string> plain = {"q73_l12", "q67_l11", "q61_l10",
                                          "q49_l8",  "q43_l7",  "q37_l6",
                                          "q31_l5",  "q31_l4"};
  ojson cases = ojson::array();
  long long ok_count = 0;
  for (const auto& stem : plain) {
    DualCertificate cert = load_certificate(dir + "/" + stem + ".json");
    CertCheck chk = check_certificate(cert);
    bool repaired = false;
    if (!chk.feasible) {
      cert = repair_certificate(cert);
      chk = check_certificate(cert);
      repaired = true;
    }
    bool ok = chk.feasible && chk.certified >= cert.claimed;
    ok_count += ok;
    cases.push_back(
        certificate_case(stem, cert, repaired, false, ok, chk.certified));
  }
  for (long long q : {19LL, 13LL, 7LL}) {
    for (const auto& r : case_analysis(q, dir)) {
      DualCertificate echo;
      echo.q = r.q;
      echo.l = r.l;
      echo.claimed = r.claimed;
      bool ok = r.certified >= r.claimed;
      ok_count += ok;
      cases.push_back(certificate_case(r.name, echo, r.repaired, r.regenerated,
                                       ok, r.certified));
    }
  }
  const long long total = (long long)cases.size();
  ojson out;
  out["target"] = "certificates";
  out["total"] = total;
  out["certified"] = ok_count;
  out["cases"] = std::move(cases);
  out["pass"] = ok_count == total;
  return out;
}

ojson repro_sweep() {
  const std::vector<long long> want_low = {7, 13, 19};
  const std::vector<long long> want_mid = {7, 13, 19, 31};
  const std::vector<long long> want_high = {7,  13, 19, 31, 37,
                                            43, 49, 61, 67, 73};
  SweepResult s = sweep_closed_form(1000);
  ojson out;
  out["target"] = "sweep";
  out["q_max"] = 1000;
  out["low"] = set_array(s.low);
  out["mid"] = set_array(s.mid);
  out["high"] = set_array(s.high);
  out["pass"] = s.low == want_low && s.mid == want_mid && s.high == want_high;
  return out;
}

ojson repro_mu_census() {
  ojson failures = ojson::array();
  long long groups = 0;
  for (long long n = 2; n <= 40; ++n) {
    for (const auto& f : abelian_factor_lists(n)) {
      Group g(f);
      ++groups;
      MuResult mu = mu_exact(g);
      if (mu.mu_n != nu_times_n(g)) {
        ojson bad;
        bad["group"] = g.spec_string();
        bad["mu_n"] = mu.mu_n;
        bad["nu_n"] = nu_times_n(g);
        failures.push_back(std::move(bad));
      }
    }
  }
  ojson out;
  out["target"] = "mu-census";
  out["max_n"] = 40;
  out["groups"] = groups;
  out["failures"] = std::move(failures);
  out["pass"] = out["failures"].empty();
  return out;
}

ojson repro_kp(unsigned long long seed) {
  long long checks = 0, violations = 0;
  // Exhaustive over every subset pair and threshold in the small groups.
  for (const char* spec : {"2", "3", "4", "2x2", "5", "6", "7", "2x3"}) {
    Group g = Group::parse(spec);
    const long long n = g.order();
    for (long long ab = 0; ab < (1LL << n); ++ab)
      for (long long bb = 0; bb < (1LL << n); ++bb) {
        std::vector<long long> a, b;
        for (long long x = 0; x < n; ++x) {
          if (ab >> x & 1) a.push_back(x);
          if (bb >> x & 1) b.push_back(x);
        }
        long long tmax = std::min(a.size(), b.size());
        for (long long t = 0; t <= tmax; ++t) {
          ++checks;
          violations += !verify_kp(g, a, b, t).ok;
        }
      }
  }
  // Seeded random instances in groups of order up to 16.
  std::vector<Group> pool;
  for (long long n = 2; n <= 16; ++n)
    for (const auto& f : abelian_factor_lists(n)) pool.emplace_back(f);
  std::mt19937_64 rng(seed);
  for (int rep = 0; rep < 20000; ++rep) {
    const Group& g = pool[rng() % pool.size()];
    std::vector<long long> a, b;
    for (long long x = 0; x < g.order(); ++x) {
      if (rng() & 1) a.push_back(x);
      if (rng() & 1) b.push_back(x);
    }
    long long tmax = std::min(a.size(), b.size());
    long long t = (long long)(rng() % (unsigned long long)(tmax + 1));
    ++checks;
    violations += !verify_kp(g, a, b, t).ok;
  }
  ojson out;
  out["target"] = "kp-exhaustive";
  out["seed"] = seed;
  out["checks"] = checks;
  out["violations"] = violations;
  out["pass"] = violations == 0;
  return out;
}

}  // namespace

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

bool report_passed(const ojson& payload) {
  auto it = payload.find("pass");
  return it == payload.end() || it->get<bool>();
}

ojson report_classify(const Group& g) {
  Classification c = classify(g);
  ojson out;
  out["group"] = g.spec_string();
  out["canonical"] = g.canonical_spec();
  out["n"] = g.order();
  out["exponent"] = g.exponent();
  out["type"] = type_name(c.type);
  out["parameter"] = c.parameter;
  out["nu"] = rational_string(c.nu);
  return out;
}

ojson report_mu(const Group& g, const SearchBudget& budget) {
  MuResult r = mu_exact(g, budget);
  long long want = nu_times_n(g);
  ojson out;
  out["mu_n"] = r.mu_n;
  out["nu"] = rational_string(nu(g));
  out["nu_n"] = want;
  out["match"] = r.mu_n == want;
  out["nodes"] = r.nodes;
  out["witness"] = set_array(r.witness);
  out["pass"] = r.mu_n == want;
  return out;
}

ojson report_count(const Group& g, const SearchBudget& budget) {
  Int c = count_sf(g, budget);
  ojson out;
  if (c <= Int(std::numeric_limits<long long>::max()))
    out["sf_count"] = c.convert_to<long long>();
  else
    out["sf_count"] = c.str();
  out["sigma"] = sigma_decimal(g, c);
  return out;
}

ojson report_construct(const Group& g) {
  std::vector<long long> a = construct_extremal(g);
  ojson out;
  out["size"] = (long long)a.size();
  out["nu_n"] = nu_times_n(g);
  out["sum_free"] = is_sum_free(g, a);
  out["set"] = set_array(a);
  out["pass"] = out["sum_free"].get<bool>() &&
                (long long)a.size() == nu_times_n(g);
  return out;
}

ojson report_profile(const Group& g, const std::vector<long long>& a) {
  SpecialDirection sd = special_direction(g, a);
  ojson out;
  out["n"] = g.order();
  out["set_size"] = (long long)a.size();
  out["gamma"] = sd.gamma;
  out["re_min"] = sd.re_min;
  out["q"] = sd.profile.q;
  out["kernel_order"] = sd.profile.kernel.size();
  out["alphas"] = rational_array(sd.profile.alphas);
  out["k"] = sd.profile.k;
  out["has_middle"] = sd.profile.has_middle;
  return out;
}

ojson report_verify_kp(const Group& g, const std::vector<long long>& a,
                       const std::vector<long long>& b, long long t) {
  KPResult r = verify_kp(g, a, b, t);
  ojson out;
  out["n"] = g.order();
  out["a_size"] = (long long)a.size();
  out["b_size"] = (long long)b.size();
  out["t"] = t;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["ok"] = r.ok;
  out["pass"] = r.ok;
  return out;
}

ojson report_cover(const Group& g, const std::vector<long long>& a) {
  const long long n = g.order();
  const long long size = (long long)a.size();
  Classification cls = classify(g);

  ojson kn;
  bool kneser_applicable = 3 * size > n;
  if (kneser_applicable) {
    Rational r(3 * size - n, 3);  // |A| - n/3 > 0
    KneserCover kc = kneser_cover(g, a, r);
    kn["applicable"] = true;
    kn["r"] = rational_string(r);
    kn["stabilizer_order"] = kc.stabilizer.size();
    kn["quotient"] = kc.map.quotient.spec_string();
    kn["image"] = set_array(kc.image);
  } else {
    kn["applicable"] = false;
    kn["reason"] = "|A| <= n/3";
  }

  ojson t1;
  bool typeI_applicable =
      cls.type == GroupType::I &&
      Rational(size) * 3 * (cls.parameter + 1) >
          Rational(n) * (cls.parameter + 2);
  if (typeI_applicable) {
    HomZp psi = typeI_cover(g, a);
    long long k = (cls.parameter - 2) / 3;
    t1["applicable"] = true;
    t1["p"] = psi.p;
    t1["coeffs"] = set_array(psi.coeffs);
    t1["window_lo"] = k + 1;
    t1["window_hi"] = 2 * k + 1;
  } else {
    t1["applicable"] = false;
    t1["reason"] = cls.type == GroupType::I
                       ? "|A| <= (1/3 + 1/(3(p+1))) n"
                       : std::string("group is type ") + type_name(cls.type);
  }

  if (!kneser_applicable && !typeI_applicable)
    throw sf_error(errc::premise_failed,
                   "no cover applies: |A| <= n/3 and the type I(p) density "
                   "threshold is not met");

  ojson out;
  out["n"] = n;
  out["size"] = size;
  out["kneser"] = std::move(kn);
  out["typeI"] = std::move(t1);
  out["pass"] = true;
  return out;
}

ojson report_granularize(const Group& g, const std::vector<long long>& a,
                         long long L, long long L_prime, const Rational& eps) {
  GranularizationResult r = granularize(g, a, L, L_prime, eps);
  ojson out;
  out["n"] = g.order();
  out["set_size"] = (long long)a.size();
  out["kind"] = r.structure.kind == GrainKind::coset ? "coset" : "progression";
  out["subgroup_order"] = r.structure.subgroup.size();
  out["d"] = r.structure.d;
  out["L"] = r.structure.L;
  out["grain_count"] = (long long)r.structure.grains.size();
  out["a_prime_size"] = (long long)r.a_prime.size();
  out["removed"] = r.removed;
  out["schur_a_prime"] = r.schur_a_prime;
  out["delta"] = rational_string(r.delta);
  out["premise_holds"] = r.premise_71_holds;
  out["p_size"] = (long long)r.p.size();
  out["a_prime"] = set_array(r.a_prime);
  out["p"] = set_array(r.p);
  out["pass"] = true;
  return out;
}

ojson report_lp_verify(const std::string& cert_path, int bits,
                       bool allow_repair) {
  DualCertificate cert = load_certificate(cert_path);
  CertCheck chk = check_certificate(cert, bits);
  const bool feasible_as_given = chk.feasible;
  const Rational violation_as_given = chk.max_violation;
  bool repaired = false;
  std::string repair_note;
  if (!chk.feasible && allow_repair) {
    try {
      cert = repair_certificate(cert, bits);
      chk = check_certificate(cert, bits);
      repaired = true;
    } catch (const sf_error& e) {
      repair_note = e.what();
    }
  }
  Rational min_margin =
      *std::min_element(chk.margins.begin(), chk.margins.end());
  ojson out;
  out["file"] = cert_path;
  out["q"] = cert.q;
  out["l"] = cert.l;
  out["claimed"] = rational_string(cert.claimed);
  out["feasible_as_given"] = feasible_as_given;
  out["max_violation_as_given"] = rational_string(violation_as_given);
  out["repaired"] = repaired;
  if (!repair_note.empty()) out["repair_failed"] = repair_note;
  out["tau"] = rational_string(cert.tau);
  out["feasible"] = chk.feasible;
  out["min_margin"] = rational_string(min_margin);
  out["certified"] = rational_string(chk.certified);
  out["certified_approx"] = approx(chk.certified);
  out["pass"] = chk.feasible && chk.certified >= cert.claimed;
  return out;
}

ojson report_lp_solve(long long q, long long l, const std::string& extras_json,
                      const Rational& target, int bits) {
  std::vector<ExtraRow> extras;
  if (!extras_json.empty()) {
    // Reuse the certificate parser by wrapping the array in a stub document.
    nlohmann::json stub;
    stub["q"] = q;
    stub["l"] = l;
    stub["tau"] = "0";
    stub["claimed"] = "0";
    try {
      stub["extras"] = nlohmann::json::parse(extras_json);
    } catch (const nlohmann::json::exception& e) {
      throw sf_error(errc::invalid_spec,
                     std::string("extras: not valid JSON: ") + e.what());
    }
    extras = certificate_from_json(stub.dump()).extras;
  }
  DualCertificate cert = solve_and_certify(q, l, extras, target, bits);
  CertCheck chk = check_certificate(cert, bits);
  ojson out;
  out["q"] = q;
  out["l"] = l;
  out["target"] = rational_string(target);
  out["tau"] = rational_string(cert.tau);
  out["certified"] = rational_string(chk.certified);
  out["certified_approx"] = approx(chk.certified);
  out["certificate"] = ojson::parse(certificate_to_json(cert));
  out["pass"] = chk.feasible && chk.certified >= target;
  return out;
}

ojson report_lp_sweep(long long q_max, int bits) {
  SweepResult s = sweep_closed_form(q_max, bits);
  ojson out;
  out["q_max"] = q_max;
  out["low"] = set_array(s.low);
  out["mid"] = set_array(s.mid);
  out["high"] = set_array(s.high);
  return out;
}

ojson report_case_analysis(long long q, const std::string& cert_dir,
                           int bits) {
  std::vector<CaseResult> results = case_analysis(q, cert_dir, bits);
  ojson cases = ojson::array();
  for (const auto& r : results) {
    ojson c;
    c["name"] = r.name;
    c["l"] = r.l;
    c["claimed"] = rational_string(r.claimed);
    c["certified"] = rational_string(r.certified);
    c["certified_approx"] = approx(r.certified);
    c["repaired"] = r.repaired;
    c["regenerated"] = r.regenerated;
    cases.push_back(std::move(c));
  }
  ojson out;
  out["q"] = q;
  out["cases"] = std::move(cases);
  out["pass"] = true;  // case_analysis throws when any claim is missed
  return out;
}

ojson report_repro(const std::string& target, const std::string& data_dir,
                   unsigned long long seed) {
  if (target == "certificates") return repro_certificates(data_dir);
  if (target == "sweep") return repro_sweep();
  if (target == "mu-census") return repro_mu_census();
  if (target == "kp-exhaustive") return repro_kp(seed);
  throw sf_error(errc::invalid_argument,
                 "unknown repro target '" + target +
                     "' (expected certificates, sweep, mu-census, or "
                     "kp-exhaustive)");
}

}  // namespace sumfree
