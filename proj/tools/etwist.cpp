// Command-line front end: exact tables of twisted Euler numbers/polynomials
// and alternating power sums, the symmetry-identity verifier, and the
// p-adic convergence diagnostic.
//
// Exit codes: 0 success, 1 identity violation, 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <etwist/etwist.hpp>

using namespace etwist;

namespace {

struct ContextFlags {
  unsigned p = 3, s = 0, d = 1;
  unsigned char_index = 0;
  unsigned xi = 0;
};

void add_context_flags(CLI::App* cmd, ContextFlags& f) {
  cmd->add_option("--p", f.p, "odd prime p")->capture_default_str();
  cmd->add_option("--s", f.s, "twist level; xi = zeta_{p^s}^j")->capture_default_str();
  cmd->add_option("--d", f.d, "character modulus (odd)")->capture_default_str();
  cmd->add_option("--char", f.char_index,
                  "character index in the deterministic enumeration mod d")
      ->capture_default_str();
  cmd->add_option("--xi", f.xi, "twist exponent j in xi = zeta_{p^s}^j")
      ->capture_default_str();
}

EulerContext build_context(const ContextFlags& f) {
  if (f.d % 2 == 0) throw std::invalid_argument("d must be odd");
  auto chars = enumerate_characters(f.d);
  if (f.char_index >= chars.size())
    throw std::invalid_argument("char index " + std::to_string(f.char_index) +
                                " out of range; there are " +
                                std::to_string(chars.size()) +
                                " characters mod " + std::to_string(f.d));
  return EulerContext(f.p, f.s, f.d, chars[f.char_index], f.xi);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file " + out_path);
  os << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<FieldElement> parse_y_values(const std::vector<std::string>& raw,
                                         const ContextPtr& field) {
  std::vector<FieldElement> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.emplace_back(field, rat_from_string(s));
  return out;
}

std::array<unsigned, 3> parse_weights(const std::vector<unsigned>& w) {
  if (w.size() != 3)
    throw std::invalid_argument("--w needs exactly three positive integers");
  for (unsigned wi : w)
    if (wi == 0) throw std::invalid_argument("weights must be positive");
  return {w[0], w[1], w[2]};
}

int run_euler(const ContextFlags& cf, unsigned nmax, const std::string& x_str,
              bool with_coeffs, const std::string& format,
              const std::string& out_path) {
  EulerContext ctx = build_context(cf);
  std::vector<FieldElement> values;
  if (x_str.empty()) {
    auto E = euler_numbers(ctx, nmax);
    values.assign(E->begin(), E->end());
  } else {
    FieldElement x(ctx.field(), rat_from_string(x_str));
    auto E = euler_polynomial_prefix(ctx, nmax, x);
    values.assign(E->begin(), E->end());
  }
  if (format == "json") {
    Json j{{"context", json_context(ctx)}};
    if (!x_str.empty()) j["x"] = x_str;
    Json vals = Json::array();
    for (const auto& v : values) vals.push_back(json_field_element(v));
    j["values"] = vals;
    if (with_coeffs) {
      Json polys = Json::array();
      for (unsigned n = 0; n <= nmax; ++n) {
        Json coeffs = Json::array();
        for (const auto& c : euler_polynomial_coeffs(ctx, n))
          coeffs.push_back(json_field_element(c));
        polys.push_back(Json{{"n", n}, {"coeffs", coeffs}});
      }
      j["polynomials"] = polys;
    }
    emit(dump(j), out_path);
  } else {
    std::ostringstream os;
    os << render_value_table("n", values);
    if (with_coeffs)
      for (unsigned n = 0; n <= nmax; ++n) {
        os << "E_" << n << "(x) coeffs (x^0..x^" << n << "):";
        for (const auto& c : euler_polynomial_coeffs(ctx, n))
          os << " " << field_element_brief(c);
        os << "\n";
      }
    emit(os.str(), out_path);
  }
  return 0;
}

int run_powersum(const ContextFlags& cf, unsigned kmax, unsigned limit,
                 const std::string& format, const std::string& out_path) {
  EulerContext ctx = build_context(cf);
  std::vector<FieldElement> values;
  for (unsigned k = 0; k <= kmax; ++k) values.push_back(power_sum(ctx, k, limit));
  if (format == "json") {
    Json vals = Json::array();
    for (const auto& v : values) vals.push_back(json_field_element(v));
    emit(dump(Json{{"context", json_context(ctx)},
                   {"limit", limit},
                   {"values", vals}}),
         out_path);
  } else {
    emit(render_value_table("k", values), out_path);
  }
  return 0;
}

int run_converge(const ContextFlags& cf, unsigned n,
                 std::vector<unsigned> levels, const std::string& format,
                 const std::string& out_path) {
  EulerContext ctx = build_context(cf);
  // restricted valuation needs a totally ramified field
  unsigned m = ctx.field()->modulus;
  while (m % cf.p == 0) m /= cf.p;
  if (m != 1)
    throw std::invalid_argument(
        "valuation requires p-power modulus (character order must be a power "
        "of p); field modulus is " +
        std::to_string(ctx.field()->modulus));
  if (levels.empty()) levels = {1, 2, 3, 4};
  auto vals = convergence_diagnostic(ctx, n, levels);
  if (format == "json") {
    emit(dump(Json{{"context", json_context(ctx)},
                   {"n", n},
                   {"rows", json_convergence_rows(levels, vals)}}),
         out_path);
  } else {
    std::ostringstream os;
    for (size_t i = 0; i < levels.size(); ++i)
      os << "N=" << levels[i] << "  v = "
         << (vals[i] ? rat_to_string(*vals[i]) : std::string("inf")) << "\n";
    emit(os.str(), out_path);
  }
  return 0;
}

struct VerifyFlags {
  ContextFlags cf;
  std::string theorem = "all";
  std::string battery;
  std::vector<unsigned> w = {1, 3, 5};
  unsigned n = 2;
  unsigned nmax = 5;
  std::vector<std::string> y;
  bool dedup = false;
  bool lambda = false;
  unsigned order = 8;
  unsigned random_count = 0;
  unsigned long seed = 1;
  bool theorem5_literal = false;
};

std::vector<int> parse_theorem_list(const std::string& t) {
  if (t == "all") return {1, 2, 3, 4, 5, 6, 7, 8};
  int id = 0;
  try {
    id = std::stoi(t);
  } catch (...) {
    throw std::invalid_argument("--theorem expects 1..8 or 'all'");
  }
  if (id < 1 || id > 8) throw std::invalid_argument("--theorem expects 1..8 or 'all'");
  return {id};
}

int run_verify(const VerifyFlags& vf, const std::string& format,
               const std::string& out_path) {
  std::vector<int> ids = parse_theorem_list(vf.theorem);

  if (vf.lambda) {
    auto res = run_lambda_battery(vf.order);
    if (format == "json")
      emit(dump(json_lambda_battery_result(res)), out_path);
    else
      emit(std::string("lambda series checks: ") + (res.pass ? "PASS" : "FAIL") +
               " (" + std::to_string(res.checks) + " checks, order " +
               std::to_string(vf.order) + ")\n",
           out_path);
    return res.pass ? 0 : 1;
  }

  if (!vf.battery.empty()) {
    if (vf.battery != "default")
      throw std::invalid_argument("unknown battery preset '" + vf.battery + "'");
    BatteryResult res = vf.dedup ? run_dedup_battery(vf.nmax)
                                 : run_theorem_battery(ids, vf.nmax);
    if (format == "json")
      emit(dump(json_battery_result(res)), out_path);
    else {
      std::ostringstream os;
      os << (vf.dedup ? "dedup" : "theorem") << " battery: "
         << (res.pass ? "PASS" : "FAIL") << " (" << res.checks
         << " grid instances)\n";
      for (const auto& f : res.failures)
        os << "  FAIL theorem " << f.theorem << " at " << f.spec.label()
           << " w=(" << f.w[0] << "," << f.w[1] << "," << f.w[2] << ") n=" << f.n
           << "\n";
      emit(os.str(), out_path);
    }
    return res.pass ? 0 : 1;
  }

  // single-configuration mode
  EulerContext ctx = build_context(vf.cf);
  std::array<unsigned, 3> w = parse_weights(vf.w);
  bool all_pass = true;
  Json stream = Json::array();
  std::ostringstream table;

  auto record_report = [&](const IdentityReport& rep) {
    all_pass = all_pass && rep.pass;
    if (format == "json")
      stream.push_back(json_identity_report(rep));
    else {
      table << "theorem " << rep.theorem << ": " << (rep.pass ? "PASS" : "FAIL");
      if (!rep.pass)
        table << " (terms " << rep.first_divergence->first << " and "
              << rep.first_divergence->second << " differ)";
      table << "\n";
      for (const auto& t : rep.terms)
        table << "  " << field_element_brief(t) << "\n";
    }
  };
  auto record_proof = [&](const ProofReport& pr) {
    all_pass = all_pass && pr.pass;
    if (format == "json")
      stream.push_back(json_proof_report(pr));
    else {
      table << "theorem " << pr.theorem << ": " << (pr.pass ? "PASS" : "FAIL")
            << " (" << pr.instances << " grid instances)\n";
    }
  };

  for (int id : ids) {
    const unsigned yc = theorem_y_count(id);
    if (vf.theorem5_literal && id == 5) {
      SymmetryInstance inst{ctx, vf.n, w, {}};
      inst.y = vf.y.empty() ? std::vector<FieldElement>(yc, field_zero(ctx.field()))
                            : parse_y_values(vf.y, ctx.field());
      record_report(theorem5_literal_terms(inst));
      continue;
    }
    if (vf.random_count > 0) {
      std::mt19937_64 rng(vf.seed);
      std::uniform_int_distribution<int> num(-9, 9);
      std::uniform_int_distribution<int> den(1, 9);
      for (unsigned r = 0; r < vf.random_count; ++r) {
        SymmetryInstance inst{ctx, vf.n, w, {}};
        for (unsigned v = 0; v < yc; ++v) {
          Rat q(num(rng), den(rng));
          q.canonicalize();
          inst.y.emplace_back(ctx.field(), q);
        }
        record_report(vf.dedup && (id == 4 || id == 8)
                          ? extra_dedup_terms(id, inst)
                          : theorem_terms(id, inst));
      }
      continue;
    }
    if (!vf.y.empty()) {
      SymmetryInstance inst{ctx, vf.n, w, parse_y_values(vf.y, ctx.field())};
      record_report(vf.dedup && (id == 4 || id == 8)
                        ? extra_dedup_terms(id, inst)
                        : theorem_terms(id, inst));
    } else {
      record_proof(vf.dedup && (id == 4 || id == 8)
                       ? dedup_identity_proof(id, ctx, vf.n, w)
                       : polynomial_identity_proof(id, ctx, vf.n, w));
    }
  }

  if (format == "json")
    emit(dump(stream), out_path);
  else
    emit(table.str(), out_path);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact twisted Euler polynomial tables and symmetry-identity checks"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string out_path;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write output to file instead of stdout");
  // let --format/--out appear after the subcommand too
  app.fallthrough();

  int rc = 0;

  auto* euler_cmd = app.add_subcommand(
      "euler", "twisted Euler numbers E_0..E_nmax, optionally at a point x");
  ContextFlags euler_cf;
  unsigned euler_nmax = 10;
  std::string euler_x;
  bool euler_coeffs = false;
  add_context_flags(euler_cmd, euler_cf);
  euler_cmd->add_option("--nmax", euler_nmax, "highest degree")->capture_default_str();
  euler_cmd->add_option("--x", euler_x, "evaluation point as num or num/den");
  euler_cmd->add_flag("--coeffs", euler_coeffs,
                      "also list E_n(x) coefficient vectors");
  euler_cmd->callback([&]() {
    rc = run_euler(euler_cf, euler_nmax, euler_x, euler_coeffs, format, out_path);
  });

  auto* power_cmd = app.add_subcommand(
      "powersum", "alternating power sums T_k(limit) for k = 0..kmax");
  ContextFlags power_cf;
  unsigned power_kmax = 10, power_limit = 2;
  add_context_flags(power_cmd, power_cf);
  power_cmd->add_option("--kmax", power_kmax, "highest exponent k")->capture_default_str();
  power_cmd->add_option("--limit", power_limit, "upper summation limit n")
      ->capture_default_str();
  power_cmd->callback([&]() {
    rc = run_powersum(power_cf, power_kmax, power_limit, format, out_path);
  });

  auto* verify_cmd = app.add_subcommand(
      "verify", "check the symmetry identities (single instance or battery)");
  VerifyFlags vf;
  add_context_flags(verify_cmd, vf.cf);
  verify_cmd->add_option("--theorem", vf.theorem, "identity id 1..8 or 'all'")
      ->capture_default_str();
  verify_cmd->add_flag_callback("--all", [&vf]() { vf.theorem = "all"; },
                                "check every identity (same as --theorem all)");
  verify_cmd->add_option("--battery", vf.battery,
                         "run a named battery preset over all contexts");
  verify_cmd->add_option("--w", vf.w, "weight triple")->delimiter(',')->expected(3);
  verify_cmd->add_option("--n", vf.n, "degree for single-configuration mode")
      ->capture_default_str();
  verify_cmd->add_option("--nmax", vf.nmax, "highest degree in battery mode")
      ->capture_default_str();
  verify_cmd->add_option("--y", vf.y,
                         "explicit y values (rationals); grid proof if omitted")
      ->delimiter(',');
  verify_cmd->add_flag("--dedup", vf.dedup,
                       "check the index-permutation deduplication comparisons");
  verify_cmd->add_flag("--lambda", vf.lambda,
                       "cross-check the quotient generating functions");
  verify_cmd->add_option("--order", vf.order, "series truncation order for --lambda")
      ->capture_default_str();
  verify_cmd->add_option("--random", vf.random_count,
                         "evaluate this many random-y instances instead of the grid");
  verify_cmd->add_option("--seed", vf.seed, "seed for --random")->capture_default_str();
  verify_cmd->add_flag("--theorem5-literal", vf.theorem5_literal,
                       "evaluate identity 5 with the constant twist factor");
  verify_cmd->callback([&]() { rc = run_verify(vf, format, out_path); });

  auto* conv_cmd = app.add_subcommand(
      "converge", "p-adic valuations of I_N(chi xi^z z^n) - E_n over levels N");
  ContextFlags conv_cf;
  unsigned conv_n = 1;
  std::vector<unsigned> conv_levels;
  add_context_flags(conv_cmd, conv_cf);
  conv_cmd->add_option("--n", conv_n, "monomial degree")->capture_default_str();
  conv_cmd->add_option("--levels", conv_levels, "levels N (default 1,2,3,4)")
      ->delimiter(',');
  conv_cmd->callback([&]() {
    rc = run_converge(conv_cf, conv_n, conv_levels, format, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
