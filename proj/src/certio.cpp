#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sumfree/lp.hpp"

namespace sumfree {

namespace {

using nlohmann::json;

Rational rational_field(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
  } catch (const std::exception& e) {
    throw sf_error(errc::invalid_spec, where + ": " + e.what());
  }
  throw sf_error(errc::invalid_spec,
                 where + ": expected a rational string or integer");
}

long long index_key(const std::string& key, const std::string& where) {
  try {
    size_t pos = 0;
    long long idx = std::stoll(key, &pos);
    if (pos == key.size()) return idx;
  } catch (const std::exception&) {
  }
  throw sf_error(errc::invalid_spec, where + ": bad index key '" + key + "'");
}

std::string rat_out(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace

DualCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw sf_error(errc::invalid_spec, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object())
    throw sf_error(errc::invalid_spec, "certificate must be a JSON object");
  for (const char* field : {"q", "l", "tau", "claimed"})
    if (!j.contains(field))
      throw sf_error(errc::invalid_spec,
                     std::string("certificate missing field '") + field + "'");

  DualCertificate c;
  if (!j["q"].is_number_integer() || !j["l"].is_number_integer())
    throw sf_error(errc::invalid_spec, "q and l must be integers");
  c.q = j["q"].get<long long>();
  c.l = j["l"].get<long long>();
  c.tau = rational_field(j["tau"], "tau");
  c.claimed = rational_field(j["claimed"], "claimed");

  for (const char* blk : {"lambda", "mu"}) {
    if (!j.contains(blk)) continue;
    if (!j[blk].is_object())
      throw sf_error(errc::invalid_spec,
                     std::string(blk) + " must be an object");
    auto& dst = std::string(blk) == "lambda" ? c.lambda : c.mu;
    for (auto it = j[blk].begin(); it != j[blk].end(); ++it)
      dst[index_key(it.key(), blk)] = rational_field(it.value(), blk);
  }
  if (j.contains("theta")) {
    if (!j["theta"].is_array())
      throw sf_error(errc::invalid_spec, "theta must be an array");
    for (const auto& v : j["theta"])
      c.theta.push_back(rational_field(v, "theta"));
  }
  if (j.contains("extras")) {
    if (!j["extras"].is_array())
      throw sf_error(errc::invalid_spec, "extras must be an array");
    for (const auto& e : j["extras"]) {
      if (!e.is_object() || !e.contains("coeffs") || !e.contains("rhs") ||
          !e["coeffs"].is_object())
        throw sf_error(errc::invalid_spec,
                       "each extra needs a coeffs object and an rhs");
      ExtraRow row;
      for (auto it = e["coeffs"].begin(); it != e["coeffs"].end(); ++it)
        row.coeffs[index_key(it.key(), "extras.coeffs")] =
            rational_field(it.value(), "extras.coeffs");
      row.rhs = rational_field(e["rhs"], "extras.rhs");
      c.extras.push_back(std::move(row));
    }
  }
  if (c.theta.size() > c.extras.size())
    throw sf_error(errc::invalid_spec, "more theta values than extras");
  return c;
}

std::string certificate_to_json(const DualCertificate& cert) {
  json j;
  j["q"] = cert.q;
  j["l"] = cert.l;
  j["tau"] = rat_out(cert.tau);
  json lam = json::object(), mu = json::object();
  for (const auto& [k, v] : cert.lambda) lam[std::to_string(k)] = rat_out(v);
  for (const auto& [k, v] : cert.mu) mu[std::to_string(k)] = rat_out(v);
  j["lambda"] = lam;
  j["mu"] = mu;
  json theta = json::array();
  for (const auto& v : cert.theta) theta.push_back(rat_out(v));
  j["theta"] = theta;
  json extras = json::array();
  for (const auto& e : cert.extras) {
    json coeffs = json::object();
    for (const auto& [k, v] : e.coeffs) {
      if (denominator(v) == 1)
        coeffs[std::to_string(k)] = (long long)numerator(v);
      else
        coeffs[std::to_string(k)] = rat_out(v);
    }
    extras.push_back(json{{"coeffs", coeffs}, {"rhs", rat_out(e.rhs)}});
  }
  j["extras"] = extras;
  j["claimed"] = rat_out(cert.claimed);
  return j.dump(2) + "\n";
}

DualCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw sf_error(errc::invalid_argument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return certificate_from_json(buf.str());
  } catch (const sf_error& e) {
    throw sf_error(e.code(), path + ": " + e.what());
  }
}

void save_certificate(const DualCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw sf_error(errc::invalid_argument, "cannot open " + path);
  out << certificate_to_json(cert);
  if (!out)
    throw sf_error(errc::internal, "write failed: " + path);
}

}  // namespace sumfree
