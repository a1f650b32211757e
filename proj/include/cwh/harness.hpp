#pragma once

// Batch driver: TOML scenarios in, per-scenario theory-vs-measurement
// reports out, plus CSV plot data.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <tomlplusplus/toml.hpp>

#include "cwh/cases.hpp"
#include "cwh/classifier.hpp"
#include "cwh/error.hpp"
#include "cwh/io.hpp"
#include "cwh/kernel_models.hpp"
#include "cwh/nystrom.hpp"
#include "cwh/parallel.hpp"
#include "cwh/symbol_engine.hpp"

namespace cwh::harness {

using io::Json;

enum class Check { index, dimension, solvability, stability, adjoint };

inline std::string to_string(Check c) {
  switch (c) {
    case Check::index: return "index";
    case Check::dimension: return "dimension";
    case Check::solvability: return "solvability";
    case Check::stability: return "stability";
    case Check::adjoint: return "adjoint";
  }
  return "?";
}

inline Check parse_check(std::string_view s) {
  for (Check c : {Check::index, Check::dimension, Check::solvability, Check::stability, Check::adjoint}) {
    if (s == to_string(c)) return c;
  }
  throw Error(ErrorCode::config, "unknown check '" + std::string(s) + "'");
}

enum class Verdict { agree, disagree, indeterminate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::agree: return "agree";
    case Verdict::disagree: return "disagree";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

/// Worst of the two: disagree beats indeterminate beats agree.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::disagree || b == Verdict::disagree) return Verdict::disagree;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::agree;
}

struct NumericSettings {
  double T = 40.0;
  std::size_t n = 2001;
  std::optional<int> weight_power;  // unset: taken from the predicted solution powers
  double boundary_exclusion = 5.0;
  double Lambda = 200.0;
  std::size_t symbol_n = 2001;
  GapOptions gap{};
  double manufactured_tol = 1e-8;  // absolute interior residual
  double bump_rel_tol = 1e-6;      // relative to max |f|
};

struct Scenario {
  std::string id;
  KernelModel k1 = KernelModel::laplace();
  KernelModel k2 = KernelModel::laplace();
  std::optional<std::string> case_name;  // set when the pair came from a case label
  EquationKind equation = EquationKind::two_kernel;
  SpaceTag space = SpaceTag::lp(2.0);
  NumericSettings numeric;
  std::vector<Check> checks{Check::index, Check::dimension};
  std::optional<ErrorCode> expect_error;

  bool wants(Check c) const { return std::find(checks.begin(), checks.end(), c) != checks.end(); }
};

struct CheckOutcome {
  std::string name;
  Verdict verdict = Verdict::indeterminate;
  std::string detail;
};

struct DimensionMeasurement {
  AssemblyOptions assembly;
  std::size_t raw_dim = 0;
  std::size_t measured = 0;  // raw_dim, or the bounded count for paired equations
  double gap_ratio = 0.0;
  double tol_used = 0.0;
  bool indeterminate = true;
  std::vector<std::string> growth_tags;
  std::vector<double> smallest_singular_values;  // ascending, at most window + 1
};

struct ScenarioReport {
  std::string id;
  EquationKind equation = EquationKind::two_kernel;
  std::string space;
  std::optional<std::pair<Moments, Moments>> moments;
  std::optional<CaseLabel> case_label;
  std::optional<Prediction> prediction;
  std::optional<int> kappa_theory;
  std::optional<int> kappa_measured;
  std::optional<DimensionMeasurement> dimension;
  std::optional<DimensionMeasurement> refined_dimension;
  std::optional<double> manufactured_residual;
  std::optional<double> bump_residual;
  std::optional<double> bump_f_norm;
  std::optional<std::size_t> adjoint_dim;
  std::vector<SweepPoint> sweep;
  std::vector<CheckOutcome> checks;
  Verdict verdict = Verdict::indeterminate;
  std::optional<std::pair<ErrorCode, std::string>> error;
  double seconds = 0.0;
};

// ---------------------------------------------------------------------------
// Config parsing.

namespace detail {

inline Json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    Json j = Json::object();
    for (auto&& [k, v] : *t) j[std::string(k.str())] = toml_to_json(v);
    return j;
  }
  if (const auto* a = node.as_array()) {
    Json j = Json::array();
    for (const auto& v : *a) j.push_back(toml_to_json(v));
    return j;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  throw Error(ErrorCode::config, "unsupported TOML value type");
}

inline void reject_unknown(const toml::table& t, std::initializer_list<std::string_view> known,
                           const std::string& where) {
  for (auto&& [k, v] : t) {
    if (std::find(known.begin(), known.end(), k.str()) == known.end()) {
      throw Error(ErrorCode::config, where + ": unknown key '" + std::string(k.str()) + "'");
    }
  }
}

inline double positive(const toml::node_view<const toml::node>& v, double fallback, const std::string& what) {
  if (!v) return fallback;
  const auto d = v.value<double>();
  require(d.has_value() && std::isfinite(*d) && *d > 0, ErrorCode::config, what + " must be a positive number");
  return *d;
}

inline std::size_t positive_count(const toml::node_view<const toml::node>& v, std::size_t fallback,
                                  const std::string& what) {
  if (!v) return fallback;
  const auto d = v.value<std::int64_t>();
  require(d.has_value() && *d > 0, ErrorCode::config, what + " must be a positive integer");
  return static_cast<std::size_t>(*d);
}

inline NumericSettings parse_numeric(const toml::table* t, NumericSettings base, const std::string& where) {
  if (t == nullptr) return base;
  reject_unknown(*t,
                 {"T", "n", "weight_power", "boundary_exclusion", "Lambda", "symbol_n", "gap_floor_rel",
                  "gap_min_ratio", "gap_window", "manufactured_tol", "bump_rel_tol"},
                 where);
  const toml::node_view<const toml::node> v{t};
  base.T = positive(v["T"], base.T, where + ".T");
  base.n = positive_count(v["n"], base.n, where + ".n");
  if (v["weight_power"]) {
    const auto w = v["weight_power"].value<std::int64_t>();
    require(w.has_value() && *w >= 0, ErrorCode::config, where + ".weight_power must be >= 0");
    base.weight_power = static_cast<int>(*w);
  }
  base.boundary_exclusion = positive(v["boundary_exclusion"], base.boundary_exclusion, where + ".boundary_exclusion");
  base.Lambda = positive(v["Lambda"], base.Lambda, where + ".Lambda");
  base.symbol_n = positive_count(v["symbol_n"], base.symbol_n, where + ".symbol_n");
  base.gap.floor_rel = positive(v["gap_floor_rel"], base.gap.floor_rel, where + ".gap_floor_rel");
  base.gap.min_ratio = positive(v["gap_min_ratio"], base.gap.min_ratio, where + ".gap_min_ratio");
  base.gap.window = positive_count(v["gap_window"], base.gap.window, where + ".gap_window");
  base.manufactured_tol = positive(v["manufactured_tol"], base.manufactured_tol, where + ".manufactured_tol");
  base.bump_rel_tol = positive(v["bump_rel_tol"], base.bump_rel_tol, where + ".bump_rel_tol");
  require(base.n % 2 == 1 && base.n >= 3, ErrorCode::config, where + ".n must be odd and >= 3");
  require(base.boundary_exclusion < base.T, ErrorCode::config, where + ".boundary_exclusion must be below T");
  return base;
}

inline std::vector<Check> parse_checks(const toml::node_view<const toml::node>& v, std::vector<Check> fallback,
                                       const std::string& where) {
  if (!v) return fallback;
  const auto* arr = v.as_array();
  require(arr != nullptr, ErrorCode::config, where + ".checks must be an array of strings");
  std::vector<Check> out;
  for (const auto& item : *arr) {
    const auto s = item.value<std::string>();
    require(s.has_value(), ErrorCode::config, where + ".checks must be an array of strings");
    out.push_back(parse_check(*s));
  }
  return out;
}

inline ErrorCode parse_error_code(std::string_view s) {
  for (ErrorCode c : {ErrorCode::invalid_argument, ErrorCode::not_conservative, ErrorCode::unsupported_moment,
                      ErrorCode::vanishing_symbol, ErrorCode::refinement_failed, ErrorCode::grid_mismatch,
                      ErrorCode::boundary_layer, ErrorCode::unknown_case, ErrorCode::config, ErrorCode::io,
                      ErrorCode::numerical}) {
    if (s == cwh::to_string(c)) return c;
  }
  throw Error(ErrorCode::config, "unknown error code '" + std::string(s) + "'");
}

inline std::string string_field(const toml::table& t, std::string_view key, const std::string& where) {
  const auto v = t[key].value<std::string>();
  require(v.has_value(), ErrorCode::config, where + "." + std::string(key) + " must be a string");
  return *v;
}

}  // namespace detail

struct SuiteConfig {
  std::vector<Scenario> scenarios;
};

/// Top level: optional [defaults] with `checks` and a `numeric` table, then
/// any number of [[scenario]] entries. A scenario names either `case`
/// ("1".."8", "IV" or a sign pattern) or both `kernel1` and `kernel2`.
inline SuiteConfig parse_config(const toml::table& root) {
  detail::reject_unknown(root, {"defaults", "scenario"}, "config");
  NumericSettings numeric_defaults;
  std::vector<Check> check_defaults{Check::index, Check::dimension};
  if (const auto* d = root["defaults"].as_table()) {
    detail::reject_unknown(*d, {"numeric", "checks"}, "defaults");
    numeric_defaults = detail::parse_numeric((*d)["numeric"].as_table(), numeric_defaults, "defaults.numeric");
    check_defaults = detail::parse_checks(toml::node_view<const toml::node>{d}["checks"], check_defaults, "defaults");
  }
  SuiteConfig cfg;
  if (!root.contains("scenario")) return cfg;
  const auto* list = root["scenario"].as_array();
  require(list != nullptr, ErrorCode::config, "'scenario' must be an array of tables");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const auto* t = (*list)[i].as_table();
    const std::string where = "scenario[" + std::to_string(i) + "]";
    require(t != nullptr, ErrorCode::config, where + " must be a table");
    detail::reject_unknown(*t,
                           {"id", "case", "kernel1", "kernel2", "equation", "space", "numeric", "checks",
                            "expect_error"},
                           where);
    Scenario s;
    s.id = detail::string_field(*t, "id", where);
    require(!s.id.empty(), ErrorCode::config, where + ".id must be nonempty");
    require(ids.insert(s.id).second, ErrorCode::config, "duplicate scenario id '" + s.id + "'");
    const bool has_case = t->contains("case");
    const bool has_kernels = t->contains("kernel1") || t->contains("kernel2");
    require(has_case != has_kernels, ErrorCode::config, where + " needs either 'case' or kernel1/kernel2");
    try {
      if (has_case) {
        s.case_name = detail::string_field(*t, "case", where);
        std::tie(s.k1, s.k2) = make_case_pair(parse_case_label(*s.case_name));
      } else {
        require(t->contains("kernel1") && t->contains("kernel2"), ErrorCode::config,
                where + " needs both kernel1 and kernel2");
        s.k1 = io::kernel_from_json(detail::toml_to_json(*t->get("kernel1")));
        s.k2 = io::kernel_from_json(detail::toml_to_json(*t->get("kernel2")));
      }
      if (t->contains("equation")) s.equation = parse_equation_kind(detail::string_field(*t, "equation", where));
      if (t->contains("space")) s.space = parse_space(detail::string_field(*t, "space", where));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::config) throw;
      throw Error(ErrorCode::config, where + ": " + e.what());
    }
    if (s.equation == EquationKind::paired) s.space = SpaceTag::m();
    s.numeric = detail::parse_numeric((*t)["numeric"].as_table(), numeric_defaults, where + ".numeric");
    s.checks = detail::parse_checks(toml::node_view<const toml::node>{t}["checks"], check_defaults, where);
    if (t->contains("expect_error")) {
      s.expect_error = detail::parse_error_code(detail::string_field(*t, "expect_error", where));
    }
    cfg.scenarios.push_back(std::move(s));
  }
  return cfg;
}

inline SuiteConfig parse_config_text(std::string_view text, std::string_view source = "config") {
  try {
    return parse_config(toml::parse(text, source));
  } catch (const toml::parse_error& e) {
    throw Error(ErrorCode::config, std::string(e.description()) + " at line " +
                                       std::to_string(e.source().begin.line));
  }
}

inline SuiteConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::config, "cannot read config '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config_text(text, path.string());
}

// ---------------------------------------------------------------------------
// Measurements.

struct SymbolCurves {
  SymbolGrid a1, a2, b1, b2, quotient;
};

/// a_k = 1 - K_k^, b1 reduced in the upper half, b2 in the lower half.
inline SymbolCurves symbol_curves(const KernelModel& k1, const KernelModel& k2, double Lambda, std::size_t n) {
  const SymbolGridOptions opt{Lambda, n};
  const Moments m1 = moments_of(k1), m2 = moments_of(k2);
  SymbolCurves c;
  c.a1 = build_symbol_grid(ConvolutionOperatorSpec(k1), opt);
  c.a2 = build_symbol_grid(ConvolutionOperatorSpec(k2), opt);
  // Refinement may differ between the two; rebuild on a common node count.
  if (c.a1.size() != c.a2.size()) {
    const SymbolGridOptions common{Lambda, std::max(c.a1.size(), c.a2.size()), 1.0, 0};
    c.a1 = build_symbol_grid(ConvolutionOperatorSpec(k1), common);
    c.a2 = build_symbol_grid(ConvolutionOperatorSpec(k2), common);
  }
  c.b1 = reduce_symbol(c.a1, zero_order(m1), Half::upper, m1);
  c.b2 = reduce_symbol(c.a2, zero_order(m2), Half::lower, m2);
  c.quotient = cwh::quotient(c.b1, c.b2);
  return c;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

inline DimensionMeasurement measure_dimension(const Scenario& s, const Prediction& p,
                                              NullspaceEstimate* keep = nullptr) {
  DimensionMeasurement d;
  d.assembly = assembly_for(p);
  if (s.numeric.weight_power) d.assembly.weight_power = *s.numeric.weight_power;
  const auto op = assemble(s.k1, s.k2, s.equation, s.numeric.T, s.numeric.n, d.assembly);
  NullspaceEstimate est = nullspace_estimate(op, {s.numeric.boundary_exclusion, s.numeric.gap});
  d.raw_dim = est.dim;
  d.gap_ratio = est.gap_ratio;
  d.tol_used = est.tol_used;
  d.indeterminate = est.indeterminate;
  for (GrowthTag g : est.growth_tags) d.growth_tags.push_back(to_string(g));
  d.measured = s.equation == EquationKind::paired ? est.count(GrowthTag::bounded) : est.dim;
  const std::size_t take = std::min(est.singular_values.size(), s.numeric.gap.window + 1);
  d.smallest_singular_values.assign(est.singular_values.rbegin(),
                                    est.singular_values.rbegin() + static_cast<std::ptrdiff_t>(take));
  if (keep) *keep = std::move(est);
  return d;
}

inline CheckOutcome dimension_outcome(const std::string& name, const DimensionMeasurement& d, int expected) {
  CheckOutcome c{name, Verdict::agree, ""};
  c.detail = "measured " + std::to_string(d.measured) + ", predicted " + std::to_string(expected) +
             ", gap ratio " + fmt(d.gap_ratio);
  if (d.indeterminate) c.verdict = Verdict::indeterminate;
  else if (static_cast<int>(d.measured) != expected) c.verdict = Verdict::disagree;
  return c;
}

}  // namespace detail

/// Smooth decaying test function used for manufactured right-hand sides.
inline double manufactured_solution(double t) { return std::cos(t) * std::exp(-0.1 * t * t); }

/// Bump right-hand side for the general solvability claim.
inline double bump(double t) { return std::exp(-t * t); }

/// Pipeline: moments, case, prediction, symbols and index, assembly,
/// nullspace, growth tags, solves, sweep. Errors end up in the report.
inline ScenarioReport run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport r;
  r.id = s.id;
  r.equation = s.equation;
  r.space = s.space.str();
  try {
    r.moments = std::pair{moments_of(s.k1), moments_of(s.k2)};
    r.case_label = classify_case(r.moments->first, r.moments->second);
    r.prediction = s.equation == EquationKind::two_kernel ? predict_two_kernel(*r.case_label, s.space)
                                                          : predict_paired(*r.case_label);
    r.kappa_theory = theory_kappa(*r.case_label);
    const Prediction& p = *r.prediction;

    if (s.wants(Check::index)) {
      const SymbolCurves c = symbol_curves(s.k1, s.k2, s.numeric.Lambda, s.numeric.symbol_n);
      r.kappa_measured = winding_number(c.quotient).winding;
      r.checks.push_back({"index", *r.kappa_measured == *r.kappa_theory ? Verdict::agree : Verdict::disagree,
                          "measured " + std::to_string(*r.kappa_measured) + ", theory " +
                              std::to_string(*r.kappa_theory)});
    }

    if (s.wants(Check::dimension) || s.wants(Check::stability)) {
      r.dimension = detail::measure_dimension(s, p);
      if (s.wants(Check::dimension)) {
        r.checks.push_back(detail::dimension_outcome("dimension", *r.dimension, p.dim_ker));
        if (p.refined) {
          Prediction q = p;
          q.solution_powers = p.refined->solution_powers;
          Scenario narrow = s;
          narrow.numeric.weight_power.reset();
          r.refined_dimension = detail::measure_dimension(narrow, q);
          r.checks.push_back(detail::dimension_outcome("refined_dimension", *r.refined_dimension,
                                                       p.refined->dim_ker));
        }
      }
    }

    if (s.wants(Check::stability)) {
      const SweepReport sweep = dimension_sweep(s.k1, s.k2, s.equation,
                                                {{s.numeric.T, s.numeric.n}, {2 * s.numeric.T, 2 * s.numeric.n - 1}},
                                                r.dimension->assembly, s.numeric.gap);
      r.sweep = sweep.points;
      CheckOutcome c{"stability", Verdict::agree, ""};
      for (const SweepPoint& pt : sweep.points) {
        c.detail += "(" + detail::fmt(pt.T) + ", " + std::to_string(pt.n) + ") -> " + std::to_string(pt.dim) +
                    (pt.indeterminate ? " indeterminate; " : "; ");
        if (pt.indeterminate) c.verdict = combine(c.verdict, Verdict::indeterminate);
      }
      if (c.verdict == Verdict::agree && !sweep.stable) c.verdict = Verdict::disagree;
      r.checks.push_back(std::move(c));
    }

    if (s.wants(Check::solvability)) {
      AssemblyOptions opt = assembly_for(p);
      if (s.numeric.weight_power) opt.weight_power = *s.numeric.weight_power;
      const auto op = assemble(s.k1, s.k2, s.equation, s.numeric.T, s.numeric.n, opt);
      const SolveOptions so{s.numeric.boundary_exclusion, s.numeric.gap, 1e-3};
      const auto psi = ComplexGridFunction::sample(op.grid, manufactured_solution);
      const SolveResult manufactured = solve_inhomogeneous(op, apply(op, psi), so);
      r.manufactured_residual = manufactured.residual;
      CheckOutcome c{"solvability", Verdict::agree, ""};
      c.detail = "manufactured residual " + detail::fmt(manufactured.residual);
      if (manufactured.indeterminate) c.verdict = Verdict::indeterminate;
      else if (!(manufactured.residual < s.numeric.manufactured_tol)) c.verdict = Verdict::disagree;
      if (p.solvable_for_all_f) {
        const SolveResult b = solve_inhomogeneous(op, ComplexGridFunction::sample(op.grid, bump), so);
        r.bump_residual = b.residual;
        r.bump_f_norm = b.f_norm;
        c.detail += ", bump residual " + detail::fmt(b.residual) + " for max|f| " + detail::fmt(b.f_norm);
        if (b.indeterminate) c.verdict = combine(c.verdict, Verdict::indeterminate);
        else if (!(b.residual < s.numeric.bump_rel_tol * b.f_norm)) c.verdict = Verdict::disagree;
      }
      r.checks.push_back(std::move(c));
    }

    if (s.wants(Check::adjoint)) {
      AssemblyOptions opt = assembly_for(p);
      if (s.numeric.weight_power) opt.weight_power = *s.numeric.weight_power;
      const auto op = assemble(s.k1, s.k2, s.equation, s.numeric.T, s.numeric.n, opt);
      const GapDecision g = adjoint_nullspace(op, s.numeric.gap);
      r.adjoint_dim = g.dim;
      CheckOutcome c{"adjoint", Verdict::agree,
                     "transposed nullspace " + std::to_string(g.dim) + ", predicted cokernel " +
                         std::to_string(p.dim_coker)};
      if (g.indeterminate) c.verdict = Verdict::indeterminate;
      else if (static_cast<int>(g.dim) != p.dim_coker) c.verdict = Verdict::disagree;
      r.checks.push_back(std::move(c));
    }

    r.verdict = Verdict::agree;
    for (const auto& c : r.checks) r.verdict = combine(r.verdict, c.verdict);
    if (s.expect_error) {
      r.checks.push_back({"expected_error", Verdict::disagree,
                          "expected " + std::string(cwh::to_string(*s.expect_error)) + ", none raised"});
      r.verdict = Verdict::disagree;
    }
  } catch (const Error& e) {
    r.error = std::pair{e.code(), std::string(e.what())};
    if (s.expect_error && *s.expect_error == e.code()) {
      r.checks.push_back({"expected_error", Verdict::agree, e.what()});
      r.verdict = Verdict::agree;
    } else {
      r.verdict = Verdict::indeterminate;
    }
  } catch (const std::exception& e) {
    r.error = std::pair{ErrorCode::numerical, std::string(e.what())};
    r.verdict = Verdict::indeterminate;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Reports.

inline Json to_json(const DimensionMeasurement& d) {
  Json j;
  j["weight_power"] = d.assembly.weight_power;
  j["closure"] = {d.assembly.closure.right, d.assembly.closure.left};
  j["raw_dim"] = d.raw_dim;
  j["measured"] = d.measured;
  j["gap_ratio"] = d.gap_ratio;
  j["tol_used"] = d.tol_used;
  j["indeterminate"] = d.indeterminate;
  j["growth_tags"] = d.growth_tags;
  j["smallest_singular_values"] = d.smallest_singular_values;
  return j;
}

/// Everything except timings, which live under "timing" so that reports of
/// repeated runs can be compared after dropping that one key.
inline Json to_json(const ScenarioReport& r) {
  Json j;
  j["id"] = r.id;
  j["equation"] = std::string(cwh::to_string(r.equation));
  j["space"] = r.space;
  if (r.case_label) j["case"] = io::to_json(*r.case_label);
  if (r.moments) j["moments"] = {io::to_json(r.moments->first), io::to_json(r.moments->second)};
  if (r.prediction) j["prediction"] = io::to_json(*r.prediction);
  Json m = Json::object();
  if (r.kappa_theory) m["kappa_theory"] = *r.kappa_theory;
  if (r.kappa_measured) m["kappa_measured"] = *r.kappa_measured;
  if (r.dimension) m["dimension"] = to_json(*r.dimension);
  if (r.refined_dimension) m["refined_dimension"] = to_json(*r.refined_dimension);
  if (r.manufactured_residual) m["manufactured_residual"] = *r.manufactured_residual;
  if (r.bump_residual) {
    m["bump_residual"] = *r.bump_residual;
    m["bump_f_norm"] = *r.bump_f_norm;
  }
  if (r.adjoint_dim) m["adjoint_dim"] = *r.adjoint_dim;
  if (!r.sweep.empty()) {
    Json pts = Json::array();
    for (const auto& p : r.sweep) {
      pts.push_back({{"T", p.T}, {"n", p.n}, {"dim", p.dim}, {"gap_ratio", p.gap_ratio},
                     {"indeterminate", p.indeterminate}});
    }
    m["sweep"] = pts;
  }
  j["measurement"] = m;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
  j["checks"] = checks;
  if (r.error) j["error"] = {{"code", std::string(cwh::to_string(r.error->first))}, {"message", r.error->second}};
  j["verdict"] = to_string(r.verdict);
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

struct SuiteResult {
  std::vector<ScenarioReport> reports;  // config order
  int exit_code = 0;
};

/// 0 when every verdict is agree, 1 when any disagrees, 2 when the worst is
/// indeterminate.
inline int exit_code_for(const std::vector<ScenarioReport>& reports) {
  Verdict worst = Verdict::agree;
  for (const auto& r : reports) worst = combine(worst, r.verdict);
  switch (worst) {
    case Verdict::agree: return 0;
    case Verdict::disagree: return 1;
    case Verdict::indeterminate: return 2;
  }
  return 2;
}

/// Runs the scenarios on up to `jobs` threads (0 means hardware
/// concurrency); results are collected in config order.
inline SuiteResult run_suite(const SuiteConfig& cfg, unsigned jobs = 0) {
  SuiteResult out;
  out.reports.resize(cfg.scenarios.size());
  parallel_for(cfg.scenarios.size(), [&](std::size_t i) { out.reports[i] = run_scenario(cfg.scenarios[i]); }, jobs);
  out.exit_code = exit_code_for(out.reports);
  return out;
}

inline Json to_json(const SuiteResult& s) {
  Json j;
  j["schema"] = 1;
  Json list = Json::array();
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& r : s.reports) {
    list.push_back(to_json(r));
    ++counts[static_cast<int>(r.verdict)];
  }
  j["summary"] = {{"scenarios", s.reports.size()},
                  {"agree", counts[0]},
                  {"disagree", counts[1]},
                  {"indeterminate", counts[2]},
                  {"exit_code", s.exit_code}};
  j["scenarios"] = list;
  return j;
}

// ---------------------------------------------------------------------------
// Plot data.

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& p) {
  std::ofstream os(p);
  require(static_cast<bool>(os), ErrorCode::io, "cannot write '" + p.string() + "'");
  return os;
}

}  // namespace detail

/// Writes a1, a2, b1, b2, b1_over_b2 (lambda, re, im, unwrapped_phase),
/// singular_values (index, sigma; descending) and nullspace_basis (t and one
/// column per basis function) into out_dir. Returns the written paths.
inline std::vector<std::filesystem::path> emit_curves(const Scenario& s, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  require(!ec && std::filesystem::is_directory(out_dir), ErrorCode::io,
          "cannot create directory '" + out_dir.string() + "'");
  std::vector<std::filesystem::path> written;
  const Moments m1 = moments_of(s.k1), m2 = moments_of(s.k2);
  const CaseLabel label = classify_case(m1, m2);
  const Prediction p = s.equation == EquationKind::two_kernel ? predict_two_kernel(label, s.space) : predict_paired(label);

  const SymbolCurves c = symbol_curves(s.k1, s.k2, s.numeric.Lambda, s.numeric.symbol_n);
  const std::pair<const char*, const SymbolGrid*> grids[] = {
      {"a1.csv", &c.a1}, {"a2.csv", &c.a2}, {"b1.csv", &c.b1}, {"b2.csv", &c.b2}, {"b1_over_b2.csv", &c.quotient}};
  for (const auto& [name, g] : grids) {
    auto os = detail::open_for_write(out_dir / name);
    write_csv(os, *g);
    written.push_back(out_dir / name);
  }

  NullspaceEstimate est;
  detail::measure_dimension(s, p, &est);
  {
    auto os = detail::open_for_write(out_dir / "singular_values.csv");
    os.precision(17);
    os << "index,sigma\n";
    for (std::size_t k = 0; k < est.singular_values.size(); ++k) os << k << ',' << est.singular_values[k] << '\n';
    written.push_back(out_dir / "singular_values.csv");
  }
  {
    auto os = detail::open_for_write(out_dir / "nullspace_basis.csv");
    os.precision(17);
    os << 't';
    for (std::size_t k = 0; k < est.basis.size(); ++k) os << ",phi" << k << '_' << to_string(est.growth_tags[k]);
    os << '\n';
    const UniformGrid g(s.numeric.T, s.numeric.n);
    for (std::size_t j = 0; j < g.n; ++j) {
      os << g.t(j);
      for (const auto& b : est.basis) os << ',' << b.values[j];
      os << '\n';
    }
    written.push_back(out_dir / "nullspace_basis.csv");
  }
  return written;
}

}  // namespace cwh::harness
