#pragma once

// JSON payload builders behind the C interface.  Each builder runs one
// library operation and renders the outcome with stable field ordering;
// errors propagate as sf_error.  A payload that represents a checkable
// claim carries a boolean "pass" field; report_passed reads it (absent
// means unconditionally true).

#include <string>
#include <vector>

#include <json.hpp>

#include "sumfree/group.hpp"
#include "sumfree/sumfree.hpp"

namespace sumfree {

using ojson = nlohmann::ordered_json;

ojson report_classify(const Group& g);
ojson report_mu(const Group& g, const SearchBudget& budget);
ojson report_count(const Group& g, const SearchBudget& budget);
ojson report_construct(const Group& g);
ojson report_profile(const Group& g, const std::vector<long long>& a);
ojson report_verify_kp(const Group& g, const std::vector<long long>& a,
                       const std::vector<long long>& b, long long t);
ojson report_cover(const Group& g, const std::vector<long long>& a);
ojson report_granularize(const Group& g, const std::vector<long long>& a,
                         long long L, long long L_prime, const Rational& eps);
ojson report_lp_verify(const std::string& cert_path, int bits,
                       bool allow_repair);
ojson report_lp_solve(long long q, long long l, const std::string& extras_json,
                      const Rational& target, int bits);
ojson report_lp_sweep(long long q_max, int bits);
ojson report_case_analysis(long long q, const std::string& cert_dir, int bits);
ojson report_repro(const std::string& target, const std::string& data_dir,
                   unsigned long long seed);

bool report_passed(const ojson& payload);

// Exact "p/q" (or integer) rendering used throughout the payloads.
std::string rational_string(const Rational& r);

}  // namespace sumfree
