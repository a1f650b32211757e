#pragma once

// JSON forms of kernels, moments, case labels and predictions.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cwh/cases.hpp"
#include "cwh/classifier.hpp"
#include "cwh/error.hpp"
#include "cwh/kernel_models.hpp"

namespace cwh::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const KernelModel& k) {
  Json j;
  j["family"] = k.family_name();
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, OneSidedPlus>) {
          j["p"] = f.p;
        } else if constexpr (std::is_same_v<F, OneSidedMinus>) {
          j["q"] = f.q;
        } else if constexpr (std::is_same_v<F, TwoSidedExp>) {
          j["a"] = f.a;
          j["p"] = f.p;
          j["b"] = f.b;
          j["q"] = f.q;
        } else {
          j["nodes"] = f.nodes;
          j["values"] = f.values;
        }
      },
      k.family());
  return j;
}

namespace detail {

inline double number(const Json& j, const char* key) {
  require(j.contains(key), ErrorCode::config, std::string("kernel spec lacks '") + key + "'");
  require(j.at(key).is_number(), ErrorCode::config, std::string("kernel field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace detail

/// Accepts {"family": "one_sided_plus", "p": ...}, "one_sided_minus" with q,
/// "two_sided_exp" with a, p, b, q, "laplace", and "sampled" with nodes and values.
inline KernelModel kernel_from_json(const Json& j) {
  require(j.is_object() && j.contains("family") && j.at("family").is_string(), ErrorCode::config,
          "kernel spec needs a string 'family'");
  const std::string family = j.at("family").get<std::string>();
  if (family == "one_sided_plus") return KernelModel::one_sided_plus(detail::number(j, "p"));
  if (family == "one_sided_minus") return KernelModel::one_sided_minus(detail::number(j, "q"));
  if (family == "two_sided_exp") {
    return KernelModel::two_sided_exp(detail::number(j, "a"), detail::number(j, "p"), detail::number(j, "b"),
                                      detail::number(j, "q"));
  }
  if (family == "laplace") return KernelModel::laplace();
  if (family == "sampled") {
    require(j.contains("nodes") && j.contains("values"), ErrorCode::config, "sampled kernel needs nodes and values");
    return KernelModel::sampled(j.at("nodes").get<std::vector<double>>(), j.at("values").get<std::vector<double>>());
  }
  throw Error(ErrorCode::config, "unknown kernel family '" + family + "'");
}

inline Json to_json(const Moments& m) {
  Json j;
  j["nu0"] = m.nu0;
  j["nu1"] = m.nu1;
  if (m.nu2_finite) j["nu2"] = m.nu2;
  else j["nu2"] = "inf";
  return j;
}

inline Json to_json(const CaseLabel& c) {
  Json j;
  j["name"] = c.name();
  j["pattern"] = to_string(c.pattern);
  j["clause"] = c.clause;
  return j;
}

inline Json to_json(Powers p) { return Json::array({p.plus, p.minus}); }

/// {case, clause, space, dim_ker, dim_coker, solution_powers, rhs_powers}
/// plus the refined claim when present.
inline Json to_json(const Prediction& p) {
  Json j;
  j["case"] = p.case_label.name();
  j["clause"] = p.clause;
  j["equation"] = std::string(to_string(p.equation));
  j["space"] = p.space.str();
  j["dim_ker"] = p.dim_ker;
  j["dim_coker"] = p.dim_coker;
  j["solvable_for_all_f"] = p.solvable_for_all_f;
  j["solution_powers"] = to_json(p.solution_powers);
  Json rhs = Json::array();
  for (Powers r : p.rhs_powers) rhs.push_back(to_json(r));
  j["rhs_powers"] = rhs;
  if (p.refined) {
    j["refined"] = {{"solution_powers", to_json(p.refined->solution_powers)},
                    {"dim_ker", p.refined->dim_ker},
                    {"rhs_rho_power", p.refined->rhs_rho_power}};
  }
  return j;
}

}  // namespace cwh::io
