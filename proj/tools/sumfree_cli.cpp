// Command-line front end.  All mathematical work happens behind the C
// interface (sumfree/capi.h); this file only parses arguments, marshals
// sets, and renders report envelopes.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sumfree/capi.h"

namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
  int bits = 0;  // 0 = library default; seeded from SUMFREE_BITS
  unsigned long long seed = 0;
  unsigned long long budget = 0;  // 0 = unlimited
  long long max_n = 0;            // 0 = library default
  std::string data;
  std::string format = "json";
  int threads = 1;
  bool timing = false;
};

// --- set marshalling --------------------------------------------------------

std::vector<long long> parse_inline_set(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    long long v = std::stoll(item, &pos);
    while (pos < item.size() && std::isspace((unsigned char)item[pos])) ++pos;
    if (pos != item.size())
      throw CLI::ValidationError("set", "bad element '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<long long> parse_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("set", "cannot open " + path);
  std::vector<long long> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(std::stoll(line));
  }
  return out;
}

// Either --set or --set-file; empty optional means "not given".
struct SetArgs {
  std::string inline_text;
  std::string file;
  bool given() const { return !inline_text.empty() || !file.empty(); }
  std::vector<long long> resolve() const {
    if (!inline_text.empty()) return parse_inline_set(inline_text);
    return parse_set_file(file);
  }
  void attach(CLI::App* cmd, const std::string& flag, const std::string& what) {
    auto* a = cmd->add_option("--" + flag, inline_text,
                              what + " as a comma list of element indices");
    auto* b = cmd->add_option("--" + flag + "-file", file,
                              what + " file, one element index per line");
    a->excludes(b);
  }
};

// --- report envelope --------------------------------------------------------

void render_text(std::ostream& os, const ojson& env) {
  os << "command: " << env["command"].get<std::string>() << "\n";
  if (env.contains("results"))
    for (const auto& [k, v] : env["results"].items()) {
      if (k == "pass") continue;  // the envelope line below covers it
      if (v.is_string())
        os << k << ": " << v.get<std::string>() << "\n";
      else
        os << k << ": " << v.dump() << "\n";
    }
  if (env.contains("error")) os << "error: " << env["error"].dump() << "\n";
  os << "pass: " << (env["pass"].get<bool>() ? "true" : "false") << "\n";
  if (env.contains("wall_ms")) os << "wall_ms: " << env["wall_ms"] << "\n";
}

void render_csv_value(std::ostream& os, const ojson& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
      os << s;
      return;
    }
    os << '"';
    for (char c : s) {
      if (c == '"') os << '"';
      os << c;
    }
    os << '"';
  } else {
    os << v.dump();
  }
}

void render_csv(std::ostream& os, const ojson& env) {
  if (!env.contains("results")) {
    os << "field,value\npass,false\n";
    return;
  }
  const ojson& r = env["results"];
  if (r.contains("low") && r.contains("mid") && r.contains("high")) {
    os << "category,q\n";
    for (const char* cat : {"low", "mid", "high"})
      for (const auto& q : r[cat]) os << cat << "," << q << "\n";
    return;
  }
  if (r.contains("cases") && r["cases"].is_array() && !r["cases"].empty()) {
    const ojson& first = r["cases"][0];
    bool head = true;
    for (const auto& [k, v] : first.items()) {
      (void)v;
      os << (head ? "" : ",") << k;
      head = false;
    }
    os << "\n";
    for (const auto& c : r["cases"]) {
      head = true;
      for (const auto& [k, v] : c.items()) {
        (void)k;
        if (!head) os << ",";
        render_csv_value(os, v);
        head = false;
      }
      os << "\n";
    }
    return;
  }
  os << "field,value\n";
  for (const auto& [k, v] : r.items()) {
    if (v.is_array() || v.is_object()) continue;
    os << k << ",";
    render_csv_value(os, v);
    os << "\n";
  }
}

// Builds the envelope around a C-API call and prints it.  Returns the process
// exit code.
int emit(const std::string& command, const ojson& config, const Globals& g,
         int status, char* payload, double wall_ms) {
  ojson env;
  env["command"] = command;
  env["config"] = config;
  bool pass = status == SF_OK;
  if (payload) {
    env["results"] = ojson::parse(payload);
    sf_string_free(payload);
  } else {
    env["error"] = {{"name", sf_last_error_name()},
                    {"message", sf_last_error()}};
  }
  env["pass"] = pass;
  if (g.timing) env["wall_ms"] = wall_ms;

  std::ostream& os = payload ? std::cout : std::cerr;
  if (g.format == "json")
    os << env.dump(2) << "\n";
  else if (g.format == "text")
    render_text(os, env);
  else
    render_csv(os, env);
  return status;
}

ojson base_config(const Globals& g) {
  ojson c;
  c["bits"] = g.bits;
  c["seed"] = g.seed;
  c["budget"] = g.budget;
  c["max_n"] = g.max_n;
  c["data"] = g.data;
  c["format"] = g.format;
  c["threads"] = g.threads;
  return c;
}

// RAII group handle.
struct GroupHandle {
  sf_group* g = nullptr;
  explicit GroupHandle(const std::string& spec) {
    g = sf_group_parse(spec.c_str());
  }
  ~GroupHandle() { sf_group_free(g); }
  GroupHandle(const GroupHandle&) = delete;
  GroupHandle& operator=(const GroupHandle&) = delete;
};

int group_parse_status() {
  std::string name = sf_last_error_name();
  if (name == "budget_exceeded") return SF_BUDGET;
  if (name == "internal") return SF_INTERNAL;
  return SF_USAGE;
}

// Runs fn (a C-API call returning status + payload) under the envelope.
template <typename Fn>
int run_command(const std::string& command, ojson config, const Globals& g,
                Fn&& fn) {
  char* payload = nullptr;
  auto t0 = std::chrono::steady_clock::now();
  int status = fn(&payload);
  auto t1 = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return emit(command, config, g, status, payload, wall);
}

// The construct payload doubles as the default set for profile/cover/
// granularize.  Returns false (and sets *status) when construction fails.
bool default_set(sf_group* g, std::vector<long long>& set, int* status) {
  char* payload = nullptr;
  int st = sf_construct(g, &payload);
  if (st != SF_OK || !payload) {
    if (payload) sf_string_free(payload);
    *status = st;
    return false;
  }
  ojson r = ojson::parse(payload);
  sf_string_free(payload);
  set.assign(r["set"].begin(), r["set"].end());
  return true;
}

int fail_usage(const std::string& command, const ojson& config,
               const Globals& g, const std::string& message) {
  ojson env;
  env["command"] = command;
  env["config"] = config;
  env["error"] = {{"name", "invalid_argument"}, {"message", message}};
  env["pass"] = false;
  if (g.format == "json")
    std::cerr << env.dump(2) << "\n";
  else if (g.format == "text")
    render_text(std::cerr, env);
  else
    render_csv(std::cerr, env);
  return SF_USAGE;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  if (const char* env_bits = std::getenv("SUMFREE_BITS"))
    g.bits = std::atoi(env_bits);
#ifdef SF_DATA_DIR
  g.data = SF_DATA_DIR;
#endif

  CLI::App app(
      "Sum-free sets in finite abelian groups: classification, exact "
      "extremal and counting computations, structural covers, granular "
      "decompositions, and exact replay of dual certificates for the cosine "
      "program.");
  app.require_subcommand(1);
  app.fallthrough();
  app.footer(
      "Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, "
      "3 budget exhausted, 4 internal error.\n"
      "SUMFREE_BITS sets the default interval precision.");

  app.add_option("--bits", g.bits,
                 "fractional bits for interval enclosures (default 64)");
  app.add_option("--seed", g.seed, "seed for randomized sweeps");
  app.add_option("--budget", g.budget,
                 "node budget for exact searches (0 = unlimited)");
  app.add_option("--max-n", g.max_n,
                 "largest group order accepted by exact searches");
  app.add_option("--data", g.data, "data directory (certificates etc.)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", g.threads,
                 "worker pool size (reserved; current operations are "
                 "single-threaded and deterministic)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", g.timing, "include wall time in the report");

  std::string group_spec;
  auto add_group = [&](CLI::App* cmd) {
    cmd->add_option("--group", group_spec,
                    "group as cyclic factors d1xd2x...xdk (e.g. 7, 2x4)")
        ->required();
  };

  auto* classify =
      app.add_subcommand("classify",
                         "Classify the group as type I(p), II, or III and "
                         "report the extremal density nu");
  add_group(classify);

  auto* mu = app.add_subcommand(
      "mu", "Exact maximum sum-free set size, compared with nu * n");
  add_group(mu);

  auto* count = app.add_subcommand(
      "count", "Exact number of sum-free subsets and sigma = log2(count)/n");
  add_group(count);

  auto* construct = app.add_subcommand(
      "construct", "The canonical extremal sum-free set, verified");
  add_group(construct);

  auto* profile = app.add_subcommand(
      "profile",
      "Coset densities along the special direction (the character "
      "minimizing the real part of the transform); defaults to the "
      "canonical extremal set");
  add_group(profile);
  SetArgs profile_set;
  profile_set.attach(profile, "set", "the set");

  auto* verify_kp = app.add_subcommand(
      "verify-kp",
      "Check sum_x min(t, r_{A,B}(x)) >= t * min(n, |A|+|B|-D-t), D the "
      "largest proper subgroup size");
  add_group(verify_kp);
  SetArgs kp_a, kp_b;
  kp_a.attach(verify_kp, "a", "the set A");
  kp_b.attach(verify_kp, "b", "the set B");
  long long kp_t = 1;
  verify_kp->add_option("--t", kp_t, "threshold t, 0 <= t <= min(|A|,|B|)");

  auto* cover = app.add_subcommand(
      "cover",
      "Cover a sum-free set with |A| > n/3 by a stabilizer-quotient "
      "preimage, plus the mod-p interval cover in type I(p); defaults to "
      "the canonical extremal set");
  add_group(cover);
  SetArgs cover_set;
  cover_set.attach(cover, "set", "the set");

  auto* granularize = app.add_subcommand(
      "granularize",
      "Decompose a sum-free set into subgroup cosets or L-term progression "
      "grains, removing at most eps*n/4 points; defaults to the canonical "
      "extremal set");
  add_group(granularize);
  SetArgs gran_set;
  gran_set.attach(granularize, "set", "the set");
  long long gran_L = 1, gran_Lp = 1;
  std::string gran_eps;
  granularize->add_option("--L", gran_L, "grain length (progressions)");
  granularize->add_option("--Lprime", gran_Lp,
                          "minimum subgroup order for the coset route");
  granularize->add_option("--eps", gran_eps, "density parameter in (0, 1/2)")
      ->required();

  auto* lp = app.add_subcommand("lp", "Dual certificates for the cosine "
                                      "program min M(beta)");
  lp->require_subcommand(1);

  auto* lp_verify = lp->add_subcommand(
      "verify",
      "Check a certificate file row by row against interval cosine "
      "enclosures; tau-repair is attempted unless --no-repair");
  std::string lp_file;
  lp_verify->add_option("--file,--cert", lp_file, "certificate JSON file")
      ->required();
  bool lp_repair = true;
  lp_verify->add_flag("--repair,!--no-repair", lp_repair,
                      "allow tau-repair of an infeasible certificate");

  auto* lp_solve = lp->add_subcommand(
      "solve",
      "Solve the dual program exactly (rational simplex) and emit a "
      "certificate reaching the target bound");
  long long lp_q = 0, lp_l = 0;
  std::string lp_extras, lp_extras_file, lp_target, lp_out;
  std::vector<std::string> lp_extra_rows;
  lp_solve->add_option("--q", lp_q, "modulus q = 1 (mod 6), q >= 7")
      ->required();
  lp_solve->add_option("--l", lp_l, "shift index, 0 <= l <= (q-1)/6")
      ->required();
  auto* exopt = lp_solve->add_option(
      "--extras", lp_extras,
      "extra rows as a JSON array, e.g. "
      "[{\"coeffs\":{\"7\":2,\"14\":1},\"rhs\":\"4/3\"}]");
  auto* exrow = lp_solve->add_option(
      "--extra", lp_extra_rows,
      "one extra row as a JSON object (repeatable), e.g. "
      "{\"coeffs\":{\"7\":2},\"rhs\":\"4/3\"}");
  exopt->excludes(exrow);
  lp_solve->add_option("--extras-file", lp_extras_file,
                       "file holding the extras JSON array")
      ->excludes(exopt)
      ->excludes(exrow);
  lp_solve->add_option("--target", lp_target, "bound to certify (rational)")
      ->required();
  lp_solve->add_option("--out", lp_out, "write the certificate to this file");

  auto* lp_sweep = lp->add_subcommand(
      "sweep",
      "Closed-form scan over q = 1 (mod 6) with all prime factors = 1 "
      "(mod 3): lists the q where the bound fails at l <= k-2, at k-1, "
      "and at k");
  long long lp_qmax = 1000;
  lp_sweep->add_option("--qmax", lp_qmax, "largest q to scan");

  auto* repro = app.add_subcommand(
      "repro", "Re-run a shipped reproduction suite end to end");
  std::string repro_target;
  repro
      ->add_option("target", repro_target,
                   "certificates | sweep | mu-census | kp-exhaustive")
      ->required()
      ->check(CLI::IsMember(
          {"certificates", "sweep", "mu-census", "kp-exhaustive"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);  // --help / --version
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return SF_USAGE;
  }
  if (g.bits <= 0) g.bits = 64;

  // ----- dispatch -----------------------------------------------------------

  auto group_config = [&](std::initializer_list<std::pair<std::string, ojson>>
                              extra = {}) {
    ojson c;
    c["group"] = group_spec;
    for (const auto& [k, v] : extra) c[k] = v;
    const ojson base = base_config(g);
    for (const auto& [k, v] : base.items()) c[k] = v;
    return c;
  };

  auto with_group = [&](const std::string& command, const ojson& config,
                        auto&& body) -> int {
    GroupHandle h(group_spec);
    if (!h.g) {
      emit(command, config, g, group_parse_status(), nullptr, 0.0);
      return group_parse_status();
    }
    return body(h.g);
  };

  try {
    if (classify->parsed()) {
      ojson cfg = group_config();
      return with_group("classify", cfg, [&](sf_group* gh) {
        return run_command("classify", cfg, g, [&](char** out) {
          return sf_classify(gh, out);
        });
      });
    }

    if (mu->parsed()) {
      ojson cfg = group_config();
      return with_group("mu", cfg, [&](sf_group* gh) {
        return run_command("mu", cfg, g, [&](char** out) {
          return sf_mu(gh, g.max_n, g.budget, out);
        });
      });
    }

    if (count->parsed()) {
      ojson cfg = group_config();
      return with_group("count", cfg, [&](sf_group* gh) {
        return run_command("count", cfg, g, [&](char** out) {
          return sf_count(gh, g.max_n, g.budget, out);
        });
      });
    }

    if (construct->parsed()) {
      ojson cfg = group_config();
      return with_group("construct", cfg, [&](sf_group* gh) {
        return run_command("construct", cfg, g, [&](char** out) {
          return sf_construct(gh, out);
        });
      });
    }

    if (profile->parsed()) {
      ojson cfg = group_config({{"set_given", profile_set.given()}});
      return with_group("profile", cfg, [&](sf_group* gh) {
        std::vector<long long> set;
        int st = 0;
        if (profile_set.given())
          set = profile_set.resolve();
        else if (!default_set(gh, set, &st))
          return emit("profile", cfg, g, st, nullptr, 0.0);
        return run_command("profile", cfg, g, [&](char** out) {
          return sf_profile(gh, set.data(), (long long)set.size(), out);
        });
      });
    }

    if (verify_kp->parsed()) {
      ojson cfg = group_config({{"t", kp_t}});
      if (!kp_a.given() || !kp_b.given())
        return fail_usage("verify-kp", cfg, g,
                          "--a and --b (or --a-file/--b-file) are required");
      return with_group("verify-kp", cfg, [&](sf_group* gh) {
        std::vector<long long> a = kp_a.resolve(), b = kp_b.resolve();
        return run_command("verify-kp", cfg, g, [&](char** out) {
          return sf_verify_kp(gh, a.data(), (long long)a.size(), b.data(),
                              (long long)b.size(), kp_t, out);
        });
      });
    }

    if (cover->parsed()) {
      ojson cfg = group_config({{"set_given", cover_set.given()}});
      return with_group("cover", cfg, [&](sf_group* gh) {
        std::vector<long long> set;
        int st = 0;
        if (cover_set.given())
          set = cover_set.resolve();
        else if (!default_set(gh, set, &st))
          return emit("cover", cfg, g, st, nullptr, 0.0);
        return run_command("cover", cfg, g, [&](char** out) {
          return sf_cover(gh, set.data(), (long long)set.size(), out);
        });
      });
    }

    if (granularize->parsed()) {
      ojson cfg = group_config({{"L", gran_L},
                                {"Lprime", gran_Lp},
                                {"eps", gran_eps},
                                {"set_given", gran_set.given()}});
      return with_group("granularize", cfg, [&](sf_group* gh) {
        std::vector<long long> set;
        int st = 0;
        if (gran_set.given())
          set = gran_set.resolve();
        else if (!default_set(gh, set, &st))
          return emit("granularize", cfg, g, st, nullptr, 0.0);
        return run_command("granularize", cfg, g, [&](char** out) {
          return sf_granularize(gh, set.data(), (long long)set.size(), gran_L,
                                gran_Lp, gran_eps.c_str(), out);
        });
      });
    }

    if (lp_verify->parsed()) {
      ojson cfg = base_config(g);
      cfg["file"] = lp_file;
      cfg["repair"] = lp_repair;
      return run_command("lp verify", cfg, g, [&](char** out) {
        return sf_lp_verify(lp_file.c_str(), g.bits, lp_repair ? 1 : 0, out);
      });
    }

    if (lp_solve->parsed()) {
      std::string extras = lp_extras;
      if (!lp_extra_rows.empty()) {
        ojson arr = ojson::array();
        for (const auto& row : lp_extra_rows) arr.push_back(ojson::parse(row));
        extras = arr.dump();
      }
      if (!lp_extras_file.empty()) {
        std::ifstream in(lp_extras_file);
        if (!in)
          return fail_usage("lp solve", base_config(g), g,
                            "cannot open " + lp_extras_file);
        std::stringstream ss;
        ss << in.rdbuf();
        extras = ss.str();
      }
      ojson cfg = base_config(g);
      cfg["q"] = lp_q;
      cfg["l"] = lp_l;
      cfg["target"] = lp_target;
      if (!lp_out.empty()) cfg["out"] = lp_out;

      char* payload = nullptr;
      auto t0 = std::chrono::steady_clock::now();
      int status = sf_lp_solve(lp_q, lp_l, extras.empty() ? "" : extras.c_str(),
                               lp_target.c_str(), g.bits, &payload);
      auto t1 = std::chrono::steady_clock::now();
      double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
      if (status == SF_OK && payload && !lp_out.empty()) {
        ojson r = ojson::parse(payload);
        std::ofstream out(lp_out);
        if (!out) {
          sf_string_free(payload);
          return fail_usage("lp solve", cfg, g, "cannot write " + lp_out);
        }
        out << r["certificate"].dump(2) << "\n";
      }
      return emit("lp solve", cfg, g, status, payload, wall);
    }

    if (lp_sweep->parsed()) {
      ojson cfg = base_config(g);
      cfg["qmax"] = lp_qmax;
      return run_command("lp sweep", cfg, g, [&](char** out) {
        return sf_lp_sweep(lp_qmax, g.bits, out);
      });
    }

    if (repro->parsed()) {
      ojson cfg = base_config(g);
      cfg["target"] = repro_target;
      return run_command("repro", cfg, g, [&](char** out) {
        return sf_repro(repro_target.c_str(), g.data.c_str(), g.seed, out);
      });
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return SF_USAGE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return SF_USAGE;
  }

  return SF_USAGE;
}
