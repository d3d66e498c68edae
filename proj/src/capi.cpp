#include "sumfree/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "sumfree/report.hpp"

namespace {

using namespace sumfree;

thread_local std::string g_error_message;
thread_local std::string g_error_name = "none";

int status_of(errc c) {
  switch (c) {
    case errc::invalid_spec:
    case errc::invalid_argument:
    case errc::invalid_subgroup:
    case errc::not_applicable:
      return SF_USAGE;
    case errc::budget_exceeded:
      return SF_BUDGET;
    case errc::internal:
      return SF_INTERNAL;
    default:
      return SF_CHECK_FAILED;
  }
}

void set_error(errc c, const std::string& msg) {
  g_error_name = errc_name(c);
  g_error_message = msg;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `fn` (returning a payload), serializes it, and maps errors to status
// codes.  A payload with "pass": false comes back as SF_CHECK_FAILED but the
// JSON is still produced — callers get the full report either way.
template <typename Fn>
int run(char** out_json, Fn&& fn) {
  if (!out_json) {
    set_error(errc::invalid_argument, "out_json must not be NULL");
    return SF_USAGE;
  }
  try {
    ojson payload = fn();
    char* text = dup_string(payload.dump(2) + "\n");
    if (!text) {
      set_error(errc::internal, "out of memory");
      return SF_INTERNAL;
    }
    *out_json = text;
    if (!report_passed(payload)) {
      set_error(errc::bound_shortfall, "one or more checks failed");
      return SF_CHECK_FAILED;
    }
    return SF_OK;
  } catch (const sf_error& e) {
    set_error(e.code(), e.what());
    return status_of(e.code());
  } catch (const std::exception& e) {
    set_error(errc::internal, e.what());
    return SF_INTERNAL;
  }
}

std::vector<long long> to_vector(const long long* data, long long len) {
  if (len < 0) throw sf_error(errc::invalid_argument, "negative set length");
  if (len > 0 && !data)
    throw sf_error(errc::invalid_argument, "NULL set with positive length");
  return std::vector<long long>(data, data + len);
}

const Group& unwrap(const sf_group* g) {
  if (!g) throw sf_error(errc::invalid_argument, "NULL group handle");
  return *reinterpret_cast<const Group*>(g);
}

}  // namespace

extern "C" {

sf_group* sf_group_parse(const char* spec) {
  try {
    if (!spec) throw sf_error(errc::invalid_argument, "NULL group spec");
    return reinterpret_cast<sf_group*>(new Group(Group::parse(spec)));
  } catch (const sf_error& e) {
    set_error(e.code(), e.what());
    return nullptr;
  } catch (const std::exception& e) {
    set_error(errc::internal, e.what());
    return nullptr;
  }
}

void sf_group_free(sf_group* g) { delete reinterpret_cast<Group*>(g); }

long long sf_group_order(const sf_group* g) {
  return g ? reinterpret_cast<const Group*>(g)->order() : 0;
}

long long sf_group_exponent(const sf_group* g) {
  return g ? reinterpret_cast<const Group*>(g)->exponent() : 0;
}

const char* sf_last_error(void) { return g_error_message.c_str(); }
const char* sf_last_error_name(void) { return g_error_name.c_str(); }

void sf_string_free(char* s) { std::free(s); }

const char* sf_version(void) { return "1.0.0"; }

int sf_classify(const sf_group* g, char** out_json) {
  return run(out_json, [&] { return report_classify(unwrap(g)); });
}

int sf_mu(const sf_group* g, long long max_n, unsigned long long max_nodes,
          char** out_json) {
  return run(out_json, [&] {
    SearchBudget budget;
    if (max_n > 0) budget.max_n_mu = max_n;
    budget.max_nodes = max_nodes;
    return report_mu(unwrap(g), budget);
  });
}

int sf_count(const sf_group* g, long long max_n, unsigned long long max_nodes,
             char** out_json) {
  return run(out_json, [&] {
    SearchBudget budget;
    if (max_n > 0) budget.max_n_count = max_n;
    budget.max_nodes = max_nodes;
    return report_count(unwrap(g), budget);
  });
}

int sf_construct(const sf_group* g, char** out_json) {
  return run(out_json, [&] { return report_construct(unwrap(g)); });
}

int sf_profile(const sf_group* g, const long long* set, long long len,
               char** out_json) {
  return run(out_json,
             [&] { return report_profile(unwrap(g), to_vector(set, len)); });
}

int sf_verify_kp(const sf_group* g, const long long* a, long long a_len,
                 const long long* b, long long b_len, long long t,
                 char** out_json) {
  return run(out_json, [&] {
    return report_verify_kp(unwrap(g), to_vector(a, a_len),
                            to_vector(b, b_len), t);
  });
}

int sf_cover(const sf_group* g, const long long* set, long long len,
             char** out_json) {
  return run(out_json,
             [&] { return report_cover(unwrap(g), to_vector(set, len)); });
}

int sf_granularize(const sf_group* g, const long long* set, long long len,
                   long long L, long long L_prime, const char* eps,
                   char** out_json) {
  return run(out_json, [&] {
    if (!eps) throw sf_error(errc::invalid_argument, "NULL eps");
    return report_granularize(unwrap(g), to_vector(set, len), L, L_prime,
                              parse_rational(eps));
  });
}

int sf_lp_verify(const char* cert_path, int bits, int allow_repair,
                 char** out_json) {
  return run(out_json, [&] {
    if (!cert_path) throw sf_error(errc::invalid_argument, "NULL path");
    return report_lp_verify(cert_path, bits > 0 ? bits : 64,
                            allow_repair != 0);
  });
}

int sf_lp_solve(long long q, long long l, const char* extras_json,
                const char* target, int bits, char** out_json) {
  return run(out_json, [&] {
    if (!target) throw sf_error(errc::invalid_argument, "NULL target");
    return report_lp_solve(q, l, extras_json ? extras_json : "",
                           parse_rational(target), bits > 0 ? bits : 64);
  });
}

int sf_lp_sweep(long long q_max, int bits, char** out_json) {
  return run(out_json,
             [&] { return report_lp_sweep(q_max, bits > 0 ? bits : 64); });
}

int sf_case_analysis(long long q, const char* cert_dir, int bits,
                     char** out_json) {
  return run(out_json, [&] {
    if (!cert_dir) throw sf_error(errc::invalid_argument, "NULL cert_dir");
    return report_case_analysis(q, cert_dir, bits > 0 ? bits : 64);
  });
}

int sf_repro(const char* target, const char* data_dir,
             unsigned long long seed, char** out_json) {
  return run(out_json, [&] {
    if (!target) throw sf_error(errc::invalid_argument, "NULL target");
    return report_repro(target, data_dir ? data_dir : "", seed);
  });
}

}  // extern "C"
