// cwh: classify kernel pairs, compute relative indices, and verify the
// dimension / solvability statements numerically from TOML scenario files.
//
// Exit codes: 0 all agree, 1 disagreement, 2 indeterminate or failed
// scenario, 64 usage or config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11/CLI11.hpp"
#include "cwh/cwh.hpp"
#include "cwh/harness.hpp"
#include "cwh/io.hpp"

namespace {

using cwh::io::Json;
namespace hs = cwh::harness;

constexpr int kUsage = 64;

struct PairArgs {
  std::string case_name;
  std::string k1_json, k2_json;
};

void add_pair_options(CLI::App* cmd, PairArgs& a) {
  cmd->add_option("--case", a.case_name, "case label: 1..8, IV or a sign pattern such as (-,+)");
  cmd->add_option("--k1", a.k1_json, R"(kernel K1 as JSON, e.g. {"family":"one_sided_plus","p":1})");
  cmd->add_option("--k2", a.k2_json, "kernel K2 as JSON");
}

std::pair<cwh::KernelModel, cwh::KernelModel> kernels_from(const PairArgs& a) {
  const bool by_case = !a.case_name.empty();
  const bool by_json = !a.k1_json.empty() || !a.k2_json.empty();
  cwh::require(by_case != by_json, cwh::ErrorCode::config, "give either --case or both --k1 and --k2");
  if (by_case) return cwh::make_case_pair(cwh::parse_case_label(a.case_name));
  cwh::require(!a.k1_json.empty() && !a.k2_json.empty(), cwh::ErrorCode::config, "both --k1 and --k2 are needed");
  try {
    return {cwh::io::kernel_from_json(Json::parse(a.k1_json)), cwh::io::kernel_from_json(Json::parse(a.k2_json))};
  } catch (const Json::parse_error& e) {
    throw cwh::Error(cwh::ErrorCode::config, std::string("kernel JSON: ") + e.what());
  }
}

void write_json(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(out);
  cwh::require(static_cast<bool>(os), cwh::ErrorCode::io, "cannot write '" + out + "'");
  os << j.dump(2) << '\n';
}

struct GridOverrides {
  std::optional<double> T;
  std::optional<std::size_t> n;

  void apply(hs::SuiteConfig& cfg) const {
    for (auto& s : cfg.scenarios) {
      if (T) s.numeric.T = *T;
      if (n) s.numeric.n = *n;
      cwh::require(s.numeric.n % 2 == 1 && s.numeric.n >= 3, cwh::ErrorCode::config, "--n must be odd and >= 3");
      cwh::require(s.numeric.boundary_exclusion < s.numeric.T, cwh::ErrorCode::config,
                   "--T must exceed the boundary exclusion");
    }
  }
};

void add_grid_options(CLI::App* cmd, GridOverrides& g) {
  cmd->add_option("--T", g.T, "grid half-width, overrides the config")->check(CLI::PositiveNumber);
  cmd->add_option("--n", g.n, "odd node count, overrides the config")->check(CLI::PositiveNumber);
}

hs::SuiteConfig select(hs::SuiteConfig cfg, const std::vector<std::string>& ids) {
  if (ids.empty()) return cfg;
  hs::SuiteConfig out;
  for (const auto& id : ids) {
    auto it = std::find_if(cfg.scenarios.begin(), cfg.scenarios.end(), [&](const hs::Scenario& s) { return s.id == id; });
    cwh::require(it != cfg.scenarios.end(), cwh::ErrorCode::config, "no scenario with id '" + id + "'");
    out.scenarios.push_back(*it);
  }
  return out;
}

int report_suite(const hs::SuiteResult& r, const std::string& out, std::optional<std::uint64_t> seed) {
  Json j = hs::to_json(r);
  if (seed) j["seed"] = *seed;
  write_json(j, out);
  for (const auto& s : r.reports) std::cerr << hs::to_string(s.verdict) << '\t' << s.id << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical workbench for conservative convolution equations with two kernels and paired equations"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "seed recorded in reports, reserved for randomized suites");

  // classify
  PairArgs classify_pair;
  std::string classify_space = "Lp(2)";
  auto* classify = app.add_subcommand("classify", "case label, theory index and predicted dimensions");
  add_pair_options(classify, classify_pair);
  classify->add_option("--space", classify_space, "M, C0 or Lp(p) for the two-kernel prediction");

  // index
  PairArgs index_pair;
  double index_lambda = 200.0;
  std::size_t index_n = 2001;
  auto* index = app.add_subcommand("index", "relative index ind(b1/b2) from sampled symbols");
  add_pair_options(index, index_pair);
  index->add_option("--Lambda", index_lambda, "symbol grid half-width")->check(CLI::PositiveNumber);
  index->add_option("--symbol-n", index_n, "symbol grid size")->check(CLI::Range(64, 1 << 22));

  // verify
  PairArgs verify_pair;
  std::string verify_equation = "two_kernel", verify_space = "Lp(2)", verify_config, verify_out;
  std::vector<std::string> verify_checks{"index", "dimension"}, verify_ids;
  GridOverrides verify_grid;
  auto* verify = app.add_subcommand("verify", "run one scenario given on the command line or picked from a config");
  add_pair_options(verify, verify_pair);
  verify->add_option("--equation", verify_equation, "two_kernel or paired");
  verify->add_option("--space", verify_space, "M, C0 or Lp(p)");
  verify->add_option("--checks", verify_checks, "index dimension solvability stability adjoint");
  verify->add_option("--config", verify_config, "TOML scenario file")->check(CLI::ExistingFile);
  verify->add_option("--id", verify_ids, "scenario ids to run from --config");
  verify->add_option("--out", verify_out, "report path (default stdout)");
  add_grid_options(verify, verify_grid);

  // suite
  std::string suite_config, suite_out;
  unsigned suite_jobs = 0;
  GridOverrides suite_grid;
  auto* suite = app.add_subcommand("suite", "run every scenario of a config in parallel");
  suite->add_option("--config", suite_config, "TOML scenario file")->required()->check(CLI::ExistingFile);
  suite->add_option("--out", suite_out, "report path (default stdout)");
  suite->add_option("--jobs", suite_jobs, "worker threads, 0 for all cores");
  add_grid_options(suite, suite_grid);

  // curves
  std::string curves_config, curves_out = "curves";
  std::vector<std::string> curves_ids;
  GridOverrides curves_grid;
  auto* curves = app.add_subcommand("curves", "symbol, spectrum and nullspace CSVs, one directory per scenario");
  curves->add_option("--config", curves_config, "TOML scenario file")->required()->check(CLI::ExistingFile);
  curves->add_option("--id", curves_ids, "restrict to these scenario ids");
  curves->add_option("--out", curves_out, "output directory");
  add_grid_options(curves, curves_grid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*classify) {
      const auto [k1, k2] = kernels_from(classify_pair);
      const cwh::Moments m1 = cwh::moments_of(k1), m2 = cwh::moments_of(k2);
      const cwh::CaseLabel label = cwh::classify_case(m1, m2);
      Json j;
      j["kernels"] = {cwh::io::to_json(k1), cwh::io::to_json(k2)};
      j["moments"] = {cwh::io::to_json(m1), cwh::io::to_json(m2)};
      j["case"] = cwh::io::to_json(label);
      j["kappa_theory"] = cwh::theory_kappa(label);
      j["two_kernel"] = cwh::io::to_json(cwh::predict_two_kernel(label, cwh::parse_space(classify_space)));
      j["paired"] = cwh::io::to_json(cwh::predict_paired(label));
      write_json(j, "");
      return 0;
    }
    if (*index) {
      const auto [k1, k2] = kernels_from(index_pair);
      const cwh::CaseLabel label = cwh::classify_case(cwh::moments_of(k1), cwh::moments_of(k2));
      const hs::SymbolCurves c = hs::symbol_curves(k1, k2, index_lambda, index_n);
      const int measured = cwh::winding_number(c.quotient).winding;
      Json j;
      j["case"] = cwh::io::to_json(label);
      j["ind_b1"] = cwh::winding_number(c.b1).winding;
      j["ind_b2"] = cwh::winding_number(c.b2).winding;
      j["kappa_measured"] = measured;
      j["kappa_theory"] = cwh::theory_kappa(label);
      write_json(j, "");
      return measured == cwh::theory_kappa(label) ? 0 : 1;
    }
    if (*verify) {
      hs::SuiteConfig cfg;
      if (!verify_config.empty()) {
        cfg = select(hs::load_config(verify_config), verify_ids);
      } else {
        hs::Scenario s;
        s.id = verify_pair.case_name.empty() ? "command_line" : "case_" + verify_pair.case_name;
        std::tie(s.k1, s.k2) = kernels_from(verify_pair);
        s.equation = cwh::parse_equation_kind(verify_equation);
        s.space = s.equation == cwh::EquationKind::paired ? cwh::SpaceTag::m() : cwh::parse_space(verify_space);
        s.checks.clear();
        for (const auto& c : verify_checks) s.checks.push_back(hs::parse_check(c));
        cfg.scenarios.push_back(std::move(s));
      }
      verify_grid.apply(cfg);
      return report_suite(hs::run_suite(cfg, 1), verify_out, seed);
    }
    if (*suite) {
      hs::SuiteConfig cfg = hs::load_config(suite_config);
      suite_grid.apply(cfg);
      return report_suite(hs::run_suite(cfg, suite_jobs), suite_out, seed);
    }
    if (*curves) {
      hs::SuiteConfig cfg = select(hs::load_config(curves_config), curves_ids);
      curves_grid.apply(cfg);
      for (const auto& s : cfg.scenarios) {
        for (const auto& p : hs::emit_curves(s, std::filesystem::path(curves_out) / s.id)) {
          std::cout << p.string() << '\n';
        }
      }
      return 0;
    }
  } catch (const cwh::Error& e) {
    std::cerr << "cwh: " << e.what() << '\n';
    return e.code() == cwh::ErrorCode::config || e.code() == cwh::ErrorCode::invalid_argument ||
                   e.code() == cwh::ErrorCode::unknown_case
               ? kUsage
               : 2;
  } catch (const std::exception& e) {
    std::cerr << "cwh: " << e.what() << '\n';
    return 2;
  }
  return kUsage;
}
