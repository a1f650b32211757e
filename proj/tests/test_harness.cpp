#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cwh/harness.hpp"

using namespace cwh;
using namespace cwh::harness;

namespace {

const char* kSmall = R"cfg(
[defaults]
checks = ["index", "dimension"]
[defaults.numeric]
T = 16.0
n = 321
)cfg";

SuiteConfig small(const std::string& scenarios) { return parse_config_text(std::string(kSmall) + scenarios); }

ErrorCode config_error_of(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::numerical;  // no error
}

// Last column of a CSV as doubles, header skipped.
std::vector<double> last_column(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<double> out;
  while (std::getline(in, line)) out.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  return out;
}

Json without_timing(Json j) {
  for (auto& s : j["scenarios"]) s.erase("timing");
  return j;
}

}  // namespace

TEST(Harness, ParsesCasesKernelsAndDefaults) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "a"
case = "(-,+)"
space = "M"
checks = ["solvability"]
[scenario.numeric]
n = 201
weight_power = 1

[[scenario]]
id = "b"
kernel1 = { family = "one_sided_plus", p = 2 }
kernel2 = { family = "sampled", nodes = [-1.0, 0.0, 1.0], values = [0.0, 1.0, 0.0] }
equation = "paired"
)cfg");
  ASSERT_EQ(cfg.scenarios.size(), 2u);
  const Scenario& a = cfg.scenarios[0];
  EXPECT_EQ(a.case_name.value(), "(-,+)");
  EXPECT_EQ(a.space, SpaceTag::m());
  EXPECT_EQ(a.numeric.T, 16.0);
  EXPECT_EQ(a.numeric.n, 201u);
  EXPECT_EQ(a.numeric.weight_power.value(), 1);
  EXPECT_EQ(a.checks, std::vector<Check>{Check::solvability});
  const Scenario& b = cfg.scenarios[1];
  EXPECT_EQ(b.k1.family_name(), "one_sided_plus");
  EXPECT_EQ(b.k2.family_name(), "sampled");
  EXPECT_EQ(b.equation, EquationKind::paired);
  EXPECT_EQ(b.space, SpaceTag::m());  // paired equations are posed in M
  EXPECT_EQ(b.numeric.n, 321u);
  EXPECT_EQ(b.checks, (std::vector<Check>{Check::index, Check::dimension}));
}

TEST(Harness, MalformedConfigsAreConfigErrors) {
  EXPECT_EQ(config_error_of("[[scenario]]\nid = 1\ncase = \"1\""), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\ncolour = 3"), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\n[[scenario]]\nid = \"x\"\ncase = \"2\""),
            ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\""), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"9\""), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\nspace = \"H1\""), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\n[scenario.numeric]\nn = 400"),
            ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\n[scenario.numeric]\nT = -1"),
            ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\ncase = \"1\"\nchecks = [\"speed\"]"), ErrorCode::config);
  EXPECT_EQ(config_error_of("[[scenario]]\nid = \"x\"\nkernel1 = { family = \"gauss\" }\nkernel2 = {}"),
            ErrorCode::config);
  EXPECT_EQ(config_error_of("this is = = not toml"), ErrorCode::config);
}

TEST(Harness, EmptySuiteAgrees) {
  const auto r = run_suite(parse_config_text(""));
  EXPECT_TRUE(r.reports.empty());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(to_json(r)["schema"], 1);
}

TEST(Harness, CaseOneTwoKernelAgreesWithDimensionTwo) {
  const auto r = run_scenario(small("[[scenario]]\nid = \"c1\"\ncase = \"1\"").scenarios[0]);
  EXPECT_EQ(r.verdict, Verdict::agree);
  EXPECT_EQ(r.dimension->measured, 2u);
  EXPECT_EQ(r.kappa_measured.value(), -2);
  EXPECT_EQ(r.case_label->clause, "I_3");
}

TEST(Harness, PairedReportCarriesPredictionAndMeasurement) {
  const auto r = run_scenario(small("[[scenario]]\nid = \"p1\"\ncase = \"1\"\nequation = \"paired\"").scenarios[0]);
  ASSERT_TRUE(r.prediction && r.dimension);
  EXPECT_EQ(r.prediction->clause, "I*_1");
  EXPECT_EQ(r.prediction->dim_ker, 0);
  // Verdict follows the comparison, whatever it turns out to be.
  const bool match = static_cast<int>(r.dimension->measured) == r.prediction->dim_ker;
  EXPECT_EQ(r.verdict, match ? Verdict::agree : Verdict::disagree);
  const Json j = to_json(r);
  EXPECT_TRUE(j.contains("prediction"));
  EXPECT_TRUE(j["measurement"].contains("dimension"));
}

TEST(Harness, NonConservativeKernelBecomesFailedRecord) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "half"
kernel1 = { family = "two_sided_exp", a = 0.25, p = 1.0, b = 0.25, q = 1.0 }
kernel2 = { family = "laplace" }

[[scenario]]
id = "fine"
case = "6"
)cfg");
  const auto r = run_suite(cfg);
  ASSERT_EQ(r.reports.size(), 2u);
  ASSERT_TRUE(r.reports[0].error.has_value());
  EXPECT_EQ(r.reports[0].error->first, ErrorCode::not_conservative);
  EXPECT_EQ(r.reports[0].verdict, Verdict::indeterminate);
  EXPECT_EQ(r.reports[1].verdict, Verdict::agree);  // the batch continued
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(to_json(r)["scenarios"][0]["error"]["code"], "not_conservative");
}

TEST(Harness, ExpectedErrorCountsAsAgreement) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "half"
kernel1 = { family = "one_sided_plus", p = 1.0 }
kernel2 = { family = "two_sided_exp", a = 0.5, p = 1.0, b = 0.0, q = 1.0 }
expect_error = "not_conservative"

[[scenario]]
id = "no_error"
case = "6"
expect_error = "not_conservative"
)cfg");
  const auto r = run_suite(cfg);
  EXPECT_EQ(r.reports[0].verdict, Verdict::agree);
  EXPECT_EQ(r.reports[1].verdict, Verdict::disagree);
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Harness, MissingGapSurfacesAsIndeterminate) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "strict"
case = "6"
checks = ["dimension"]
[scenario.numeric]
gap_min_ratio = 1e300
)cfg");
  const auto r = run_suite(cfg);
  EXPECT_EQ(r.reports[0].verdict, Verdict::indeterminate);
  EXPECT_EQ(r.exit_code, 2);
}

TEST(Harness, ExitCodePrefersDisagreement) {
  std::vector<ScenarioReport> rs(3);
  rs[0].verdict = Verdict::agree;
  rs[1].verdict = Verdict::indeterminate;
  rs[2].verdict = Verdict::agree;
  EXPECT_EQ(exit_code_for(rs), 2);
  rs[2].verdict = Verdict::disagree;
  EXPECT_EQ(exit_code_for(rs), 1);
  EXPECT_EQ(exit_code_for({}), 0);
}

TEST(Harness, SolvabilityAndStabilityChecks) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "laplace"
case = "IV"
checks = ["solvability", "stability"]
[scenario.numeric]
T = 12.0
n = 241
)cfg");
  const auto r = run_scenario(cfg.scenarios[0]);
  EXPECT_EQ(r.verdict, Verdict::agree);
  EXPECT_LT(r.manufactured_residual.value(), 1e-8);
  EXPECT_LT(r.bump_residual.value(), 1e-6 * r.bump_f_norm.value());
  ASSERT_EQ(r.sweep.size(), 2u);
  EXPECT_EQ(r.sweep[1].T, 24.0);
  EXPECT_EQ(r.sweep[1].n, 481u);
  EXPECT_EQ(r.sweep[0].dim, 2u);
  EXPECT_EQ(r.sweep[1].dim, 2u);
}

TEST(Harness, ReportsAreDeterministicModuloTiming) {
  const auto cfg = small(R"cfg(
[[scenario]]
id = "one"
case = "3"
[[scenario]]
id = "two"
case = "IV"
space = "M"
[[scenario]]
id = "three"
case = "8"
equation = "paired"
)cfg");
  const auto a = to_json(run_suite(cfg, 3)).dump();
  const auto b = to_json(run_suite(cfg, 1)).dump();
  EXPECT_NE(a, "");
  EXPECT_EQ(without_timing(Json::parse(a)), without_timing(Json::parse(b)));
}

TEST(Harness, CurveFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "cwh_curves_test";
  std::filesystem::remove_all(dir);
  const auto laplace = small("[[scenario]]\nid = \"iv\"\ncase = \"IV\"").scenarios[0];
  const auto files = emit_curves(laplace, dir / "iv");
  EXPECT_EQ(files.size(), 7u);
  const auto phase = last_column(dir / "iv" / "b1_over_b2.csv");
  EXPECT_NEAR(phase.back() - phase.front(), -4 * std::numbers::pi, 0.05);

  const auto sv = last_column(dir / "iv" / "singular_values.csv");
  EXPECT_TRUE(std::is_sorted(sv.rbegin(), sv.rend()));

  const auto six = small("[[scenario]]\nid = \"six\"\ncase = \"6\"").scenarios[0];
  emit_curves(six, dir / "six");
  const auto flat = last_column(dir / "six" / "b1_over_b2.csv");
  EXPECT_NEAR(flat.back() - flat.front(), 0.0, 0.05);

  std::ifstream basis(dir / "iv" / "nullspace_basis.csv");
  std::string header;
  std::getline(basis, header);
  EXPECT_EQ(header, "t,phi0_bounded,phi1_linear");
  std::filesystem::remove_all(dir);
}

TEST(Harness, UnwritableCurveDirectory) {
  const auto file = std::filesystem::temp_directory_path() / "cwh_not_a_directory";
  std::ofstream(file) << "x";
  const auto s = small("[[scenario]]\nid = \"six\"\ncase = \"6\"").scenarios[0];
  try {
    emit_curves(s, file / "sub");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
  std::filesystem::remove(file);
}

TEST(Harness, KernelJsonRoundTrip) {
  for (const auto& k : {KernelModel::one_sided_plus(2.5), KernelModel::one_sided_minus(0.5),
                        KernelModel::two_sided_exp(0.25, 0.5, 0.5, 1.0),
                        KernelModel::sampled({-1.0, 0.0, 2.0}, {0.0, 1.0, 0.0})}) {
    const auto back = io::kernel_from_json(io::to_json(k));
    EXPECT_EQ(io::to_json(back), io::to_json(k));
  }
  EXPECT_EQ(io::to_json(io::kernel_from_json(Json::parse(R"({"family":"laplace"})")))["family"], "two_sided_exp");
  EXPECT_THROW(io::kernel_from_json(Json::parse(R"({"family":"one_sided_plus"})")), Error);
  EXPECT_THROW(io::kernel_from_json(Json::parse(R"({"family":"one_sided_plus","p":-1})")), Error);
}

TEST(Harness, PredictionJsonFields) {
  const Json j = io::to_json(predict_two_kernel(parse_case_label("IV"), SpaceTag::lp(2.0)));
  EXPECT_EQ(j["case"], "IV");
  EXPECT_EQ(j["clause"], "IV");
  EXPECT_EQ(j["space"], "Lp(2)");
  EXPECT_EQ(j["dim_ker"], 2);
  EXPECT_EQ(j["dim_coker"], 0);
  EXPECT_EQ(j["solution_powers"], Json::array({2, 2}));
  EXPECT_EQ(j["refined"]["dim_ker"], 1);
  const Json p = io::to_json(predict_paired(parse_case_label("IV")));
  EXPECT_EQ(p["rhs_powers"].size(), 2u);
}

TEST(Harness, BundledConfigsParse) {
  const std::filesystem::path root(CWH_SOURCE_DIR);
  EXPECT_EQ(load_config(root / "configs" / "canonical_suite.toml").scenarios.size(), 9u);
  EXPECT_EQ(load_config(root / "configs" / "paired_suite.toml").scenarios.size(), 9u);
  const auto smoke = load_config(root / "configs" / "smoke.toml");
  EXPECT_EQ(run_suite(smoke).exit_code, 0);
}
