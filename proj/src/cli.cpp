#include "charp/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "charp/commutator.hpp"
#include "charp/repro.hpp"
#include "charp/script.hpp"
#include "json.hpp"

namespace charp {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitUsage = 3;
constexpr std::uint64_t kTermsPerPair = 20;
constexpr std::size_t kSpotChecks = 16;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw UsageError("empty item in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<std::uint32_t> parse_primes(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (const std::string& s : split(text)) {
    const auto v = parse_uint(s);
    if (!v || *v > UINT32_MAX) throw UsageError("'" + s + "' is not a characteristic");
    if (!is_prime(*v)) throw UsageError(s + " is not prime");
    out.push_back(static_cast<std::uint32_t>(*v));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + path);
}

struct Globals {
  std::string budget_text;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool json = false;
  bool perf = false;
  Budget budget;
};

void summarize(const CertificateDocument& doc, std::ostream& out) {
  for (const Certificate& c : doc.claims) {
    out << c.claim_id << ": " << to_string(c.overall()) << "\n";
    for (const CertStep& s : c.steps) {
      out << "  [" << to_string(s.status) << "] " << s.id << ": " << s.description << "\n";
      if (s.status != CriterionStatus::kHolds) {
        for (const std::string& n : s.notes) out << "      " << n << "\n";
      }
    }
  }
}

int emit(const CertificateDocument& doc, const Globals& g, const std::string& out_path, std::ostream& out) {
  const std::string text = write_certificate(doc, g.perf);
  if (!out_path.empty()) write_file(out_path, text);
  if (g.json) {
    out << text;
  } else {
    summarize(doc, out);
  }
  return exit_status(doc);
}

dsl::Script load_script(const std::string& path) { return dsl::parse_script(read_file(path)); }

int cmd_repro(const Globals& g, const std::string& claims_text, const std::string& primes_text,
              const std::string& out_path, std::ostream& out) {
  std::vector<Claim> claims;
  for (const std::string& name : split(claims_text)) {
    const auto c = parse_claim(name);
    if (!c) throw UsageError("unknown claim '" + name + "'");
    claims.push_back(*c);
  }
  ReproOptions options;
  options.budget = g.budget;
  CertificateDocument doc{std::string(kToolVersion), {}};
  try {
    if (!primes_text.empty()) {
      doc.claims = run_claims(claims, parse_primes(primes_text), options, g.threads);
    } else {
      for (Claim c : claims) {
        for (Certificate& cert : run_claims({c}, supported_primes(c), options, g.threads)) {
          doc.claims.push_back(std::move(cert));
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return emit(doc, g, out_path, out);
}

int cmd_check(const Globals& g, const std::string& script_path, const std::string& out_path, std::ostream& out) {
  const dsl::Script script = load_script(script_path);
  std::string id = script_path;
  if (const auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  CertificateDocument doc{std::string(kToolVersion), {dsl::run_script(script, g.budget, id)}};
  return emit(doc, g, out_path, out);
}

const Ideal& lookup_ideal(const dsl::Environment& env, const std::string& name) {
  const auto it = env.ideals.find(name);
  if (it == env.ideals.end()) throw UsageError("script binds no ideal named '" + name + "'");
  return it->second;
}

int cmd_gb(const Globals& g, const std::string& script_path, const std::string& name, std::ostream& out) {
  const dsl::Environment env = dsl::bind(load_script(script_path));
  const Ideal& ideal = lookup_ideal(env, name);
  const std::vector<Poly>& basis = ideal.groebner_basis(g.budget);

  // Seeded spot check: random combinations of the generators reduce to zero.
  std::mt19937_64 rng(g.seed);
  const std::uint32_t p = env.ring->characteristic();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  std::uniform_int_distribution<std::size_t> var(0, env.ring->num_vars() - 1);
  bool spot_ok = true;
  for (std::size_t s = 0; s < kSpotChecks && spot_ok; ++s) {
    Poly combo(env.ring);
    for (const Poly& gen : ideal.generators()) {
      Poly mult = Poly::constant(env.ring, coeff(rng));
      mult = mult + Poly::constant(env.ring, coeff(rng)) *
                        Poly::variable(env.ring, env.ring->variables()[var(rng)]);
      combo = combo + mult * gen;
    }
    spot_ok = reduce(combo, basis).is_zero();
  }

  if (g.json) {
    Json j;
    j["ideal"] = name;
    j["characteristic"] = p;
    j["monomialOrder"] = std::string(to_string(env.ring->order()));
    Json polys = Json::array();
    for (const Poly& b : basis) polys.push_back(b.to_string());
    j["basis"] = std::move(polys);
    j["spotCheck"] = Json{{"seed", g.seed}, {"samples", kSpotChecks}, {"ok", spot_ok}};
    out << j.dump(2) << "\n";
  } else {
    out << "Groebner basis of " << name << " (" << basis.size() << " elements, " << to_string(env.ring->order())
        << "):\n";
    for (const Poly& b : basis) out << "  " << b.to_string() << "\n";
    out << "spot check (seed " << g.seed << "): " << (spot_ok ? "ok" : "FAILED") << "\n";
  }
  return spot_ok ? 0 : 1;
}

int cmd_dim(const Globals& g, const std::string& script_path, const std::string& name, std::ostream& out) {
  const dsl::Environment env = dsl::bind(load_script(script_path));
  const Ideal& ideal = lookup_ideal(env, name);
  const std::size_t dim = monomial_quotient_dim(leading_monomial_ideal(ideal, g.budget));
  if (g.json) {
    out << Json{{"ideal", name}, {"dimension", dim}, {"zeroDimensional", dim == 0}}.dump(2) << "\n";
  } else {
    out << "dim k[vars]/" << name << " = " << dim << "\n";
  }
  return 0;
}

int cmd_jac(const Globals& g, const std::string& script_path, const std::string& polys_text,
            const std::string& vars_text, std::ostream& out) {
  const dsl::Environment env = dsl::bind(load_script(script_path));
  std::vector<Poly> polys;
  for (const std::string& name : split(polys_text)) {
    if (const auto it = env.polys.find(name); it != env.polys.end()) {
      polys.push_back(it->second);
    } else {
      throw UsageError("script binds no polynomial named '" + name + "'");
    }
  }
  const std::vector<std::string> vars = split(vars_text);
  for (const std::string& v : vars) {
    if (!env.ring->index_of(v)) throw UsageError("unknown variable '" + v + "'");
  }
  SymbolicMatrix j = [&] {
    try {
      return jacobian(polys, vars);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::optional<Poly> det;
  if (j.is_square()) det = determinant(j);
  if (g.json) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < j.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < j.cols(); ++c) row.push_back(j(r, c).to_string());
      rows.push_back(std::move(row));
    }
    Json doc{{"polys", split(polys_text)}, {"vars", vars}, {"rows", std::move(rows)}};
    doc["determinant"] = det ? Json(det->to_string()) : Json(nullptr);
    out << doc.dump(2) << "\n";
  } else {
    for (std::size_t r = 0; r < j.rows(); ++r) {
      out << "  [";
      for (std::size_t c = 0; c < j.cols(); ++c) out << (c ? ", " : "") << j(r, c).to_string();
      out << "]\n";
    }
    if (det) out << "det = " << det->to_string() << "\n";
  }
  return 0;
}

}  // namespace

std::optional<Budget> parse_budget(std::string_view text) {
  Budget b;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    const auto pairs = parse_uint(text.substr(0, colon));
    const auto terms = parse_uint(text.substr(colon + 1));
    if (!pairs || !terms || *pairs == 0 || *terms == 0) return std::nullopt;
    b.max_pair_reductions = *pairs;
    b.max_terms = *terms;
    return b;
  }
  const auto n = parse_uint(text);
  if (!n || *n == 0 || *n > UINT64_MAX / kTermsPerPair) return std::nullopt;
  b.max_pair_reductions = *n;
  b.max_terms = *n * kTermsPerPair;
  return b;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic-p checks for commutator ideals", "charp"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", std::string(kToolVersion));
  Globals g;
  if (const char* env = std::getenv("CHARP_BUDGET")) g.budget_text = env;
  app.add_option("--budget", g.budget_text, "N (pairs N, terms 20N) or PAIRS:TERMS; default from CHARP_BUDGET");
  app.add_option("--threads", g.threads, "workers across independent claims")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", g.seed, "seed for randomized spot checks");
  app.add_flag("--json", g.json, "machine-readable output on stdout");
  app.add_flag("--perf", g.perf, "add per-step timings under \"perf\"");

  std::string claims, primes, out_path, script, ideal, polys, vars;
  CLI::App* repro = app.add_subcommand("repro", "replay a claim and emit a certificate");
  repro->add_option("--claim", claims, "T, A3, A4, splits5, splits6, Bn or known-fpurity (comma list)")->required();
  repro->add_option("--p", primes, "comma-separated primes; default: every supported prime");
  repro->add_option("--out", out_path, "write the certificate JSON here");

  CLI::App* check = app.add_subcommand("check", "run the checks in a script");
  check->add_option("--script", script, "script file")->required();
  check->add_option("--out", out_path, "write the certificate JSON here");

  CLI::App* gb = app.add_subcommand("gb", "reduced Groebner basis of a script ideal");
  gb->add_option("--script", script, "script file")->required();
  gb->add_option("--ideal", ideal, "ideal name")->required();

  CLI::App* dim = app.add_subcommand("dim", "Krull dimension of the quotient by a script ideal");
  dim->add_option("--script", script, "script file")->required();
  dim->add_option("--ideal", ideal, "ideal name")->required();

  CLI::App* jac = app.add_subcommand("jac", "Jacobian matrix of script polynomials");
  jac->add_option("--script", script, "script file")->required();
  jac->add_option("--polys", polys, "comma-separated polynomial names")->required();
  jac->add_option("--vars", vars, "comma-separated variables")->required();

  std::vector<const char*> argv{"charp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (!g.budget_text.empty()) {
      const auto b = parse_budget(g.budget_text);
      if (!b) throw UsageError("invalid budget '" + g.budget_text + "'");
      g.budget = *b;
    }
    if (repro->parsed()) return cmd_repro(g, claims, primes, out_path, out);
    if (check->parsed()) return cmd_check(g, script, out_path, out);
    if (gb->parsed()) return cmd_gb(g, script, ideal, out);
    if (dim->parsed()) return cmd_dim(g, script, ideal, out);
    if (jac->parsed()) return cmd_jac(g, script, polys, vars, out);
  } catch (const UsageError& e) {
    err << "charp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "charp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dsl::ScriptError& e) {
    err << "charp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "charp: budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "charp: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace charp
