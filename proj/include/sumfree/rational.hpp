#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace sumfree {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Error taxonomy shared by every module.  The category decides the CLI exit
// code: usage-like errors -> 2, budget -> 3, everything else that represents a
// failed mathematical check -> 1.
enum class errc {
  invalid_spec,
  invalid_argument,
  invalid_subgroup,
  budget_exceeded,
  premise_failed,
  not_applicable,
  not_found,
  search_failure,
  classification_failure,
  infeasible,
  bound_shortfall,
  internal,
};

class sf_error : public std::runtime_error {
 public:
  sf_error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_spec: return "invalid_spec";
    case errc::invalid_argument: return "invalid_argument";
    case errc::invalid_subgroup: return "invalid_subgroup";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::premise_failed: return "premise_failed";
    case errc::not_applicable: return "not_applicable";
    case errc::not_found: return "not_found";
    case errc::search_failure: return "search_failure";
    case errc::classification_failure: return "classification_failure";
    case errc::infeasible: return "infeasible";
    case errc::bound_shortfall: return "bound_shortfall";
    case errc::internal: return "internal";
  }
  return "unknown";
}

// Parses "3", "-3", "3/7", "0.512", "-12.25".  Decimal strings are converted
// exactly (0.512 -> 512/1000); no floating point is involved.
Rational parse_rational(const std::string& s);

// Fixed-point decimal rendering with exact truncation toward zero; appends
// "..." never — the caller chooses enough digits.
std::string decimal_string(const Rational& r, int digits);

// floor(x) for rationals, exact.
Int rational_floor(const Rational& r);
Int rational_ceil(const Rational& r);

// floor(sqrt(v)), v >= 0.
Int isqrt(const Int& v);
// floor(v^(1/k)), v >= 0, k >= 1.
Int iroot(const Int& v, unsigned k);

// 2^e as a rational, e may be negative.
Rational pow2(long long e);

}  // namespace sumfree
