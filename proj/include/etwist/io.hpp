#pragma once

// JSON and plain-table serialization. All rationals are emitted as
// "num/den" strings so output is exact; field elements carry their modulus
// next to the coefficient list. Key order is fixed (ordered_json) so
// identical inputs produce byte-identical output.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "battery.hpp"
#include "characters.hpp"
#include "cyclotomic.hpp"
#include "euler.hpp"
#include "fermionic.hpp"
#include "identities.hpp"
#include "rational.hpp"

namespace etwist {

using Json = nlohmann::ordered_json;

inline Json json_rat(const Rat& r) { return rat_to_string(r); }

inline Json json_field_element(const FieldElement& a) {
  Json coeffs = Json::array();
  for (const Rat& c : a.coeffs()) coeffs.push_back(rat_to_string(c));
  return Json{{"modulus", a.context()->modulus}, {"coeffs", coeffs}};
}

inline Json json_character(const DirichletCharacter& chi) {
  Json table = Json::array();
  for (const auto& k : chi.table) {
    if (k)
      table.push_back(*k);
    else
      table.push_back(nullptr);
  }
  return Json{{"modulus", chi.modulus},
              {"order", chi.order},
              {"conductor", chi.conductor},
              {"table", table}};
}

inline Json json_context(const EulerContext& ctx) {
  return Json{{"p", ctx.prime()},
              {"s", ctx.level()},
              {"d", ctx.d()},
              {"character", json_character(ctx.character())},
              {"xi_exponent", ctx.xi_exponent()},
              {"field_modulus", ctx.field()->modulus}};
}

inline Json json_instance(const SymmetryInstance& inst) {
  Json ys = Json::array();
  for (const auto& yv : inst.y) ys.push_back(json_field_element(yv));
  return Json{{"context", json_context(inst.ctx)},
              {"n", inst.n},
              {"w", Json::array({inst.w[0], inst.w[1], inst.w[2]})},
              {"y", ys}};
}

inline Json json_identity_report(const IdentityReport& rep) {
  Json terms = Json::array();
  for (const auto& t : rep.terms) terms.push_back(json_field_element(t));
  Json div = nullptr;
  if (rep.first_divergence)
    div = Json::array({rep.first_divergence->first, rep.first_divergence->second});
  return Json{{"theorem", rep.theorem},
              {"instance", json_instance(rep.instance)},
              {"terms", terms},
              {"pass", rep.pass},
              {"first_divergence", div}};
}

inline Json json_proof_report(const ProofReport& pr) {
  Json failure = nullptr;
  if (pr.failure) failure = json_identity_report(*pr.failure);
  return Json{{"theorem", pr.theorem},
              {"pass", pr.pass},
              {"instances", pr.instances},
              {"failure", failure}};
}

inline Json json_lambda_report(const LambdaReport& rep) {
  Json fails = Json::array();
  for (const auto& [label, order] : rep.failures)
    fails.push_back(Json{{"expansion", label}, {"first_divergent_order", order}});
  return Json{{"family", lambda_family_name(rep.family)},
              {"i", rep.i},
              {"order", rep.order},
              {"pass", rep.pass},
              {"failures", fails}};
}

inline Json json_battery_spec(const BatteryContextSpec& spec) {
  return Json{{"p", spec.p},
              {"s", spec.s},
              {"d", spec.d},
              {"char_index", spec.char_index},
              {"xi_exponent", spec.xi_exp}};
}

inline Json json_battery_result(const BatteryResult& res) {
  Json fails = Json::array();
  for (const auto& f : res.failures)
    fails.push_back(Json{{"context", json_battery_spec(f.spec)},
                         {"theorem", f.theorem},
                         {"w", Json::array({f.w[0], f.w[1], f.w[2]})},
                         {"n", f.n},
                         {"report", json_identity_report(f.report)}});
  return Json{{"pass", res.pass}, {"checks", res.checks}, {"failures", fails}};
}

inline Json json_lambda_battery_result(const LambdaBatteryResult& res) {
  Json fails = Json::array();
  for (const auto& f : res.failures)
    fails.push_back(Json{{"context", json_battery_spec(f.spec)},
                         {"report", json_lambda_report(f.report)}});
  return Json{{"pass", res.pass}, {"checks", res.checks}, {"failures", fails}};
}

// convergence rows: {"N": N, "valuation": "num/den" | "inf"}
inline Json json_convergence_rows(const std::vector<unsigned>& levels,
                                  const std::vector<std::optional<Rat>>& vals) {
  Json rows = Json::array();
  for (size_t i = 0; i < levels.size(); ++i) {
    Json v;
    if (vals[i])
      v = rat_to_string(*vals[i]);
    else
      v = "inf";
    rows.push_back(Json{{"N", levels[i]}, {"valuation", v}});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// plain-text table helpers

// short human form: rational coefficient list over the power basis of the
// field, e.g. "3/2" or "[0/1, 1/1] (mod Phi_3)"
inline std::string field_element_brief(const FieldElement& a) {
  if (a.is_rational()) return rat_to_string(a.rational_part());
  std::ostringstream os;
  os << "[";
  const auto& c = a.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << rat_to_string(c[i]);
  }
  os << "] (mod Phi_" << a.context()->modulus << ")";
  return os.str();
}

inline std::string render_value_table(const std::string& index_name,
                                      const std::vector<FieldElement>& vals) {
  std::ostringstream os;
  for (size_t i = 0; i < vals.size(); ++i)
    os << index_name << "=" << i << "  " << field_element_brief(vals[i]) << "\n";
  return os.str();
}

}  // namespace etwist
