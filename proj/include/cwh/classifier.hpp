#pragma once

// Case classification of conservative kernel pairs and the solvability /
// dimension statements attached to each case.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cwh/cases.hpp"
#include "cwh/error.hpp"
#include "cwh/kernel_models.hpp"
#include "cwh/symbol_engine.hpp"

namespace cwh {

struct SpaceTag {
  enum class Kind { Lp, C0, M };
  Kind kind = Kind::Lp;
  double p = 2.0;  // only meaningful for Lp

  static SpaceTag lp(double p) {
    require(p >= 1 && std::isfinite(p), ErrorCode::invalid_argument, "Lp needs 1 <= p < inf");
    return {Kind::Lp, p};
  }
  static SpaceTag c0() { return {Kind::C0, 2.0}; }
  static SpaceTag m() { return {Kind::M, 2.0}; }

  bool bounded_functions() const noexcept { return kind == Kind::M; }

  std::string str() const {
    switch (kind) {
      case Kind::Lp: {
        std::string s = std::to_string(p);
        s.erase(s.find_last_not_of('0') + 1);
        if (s.back() == '.') s.pop_back();
        return "Lp(" + s + ")";
      }
      case Kind::C0: return "C0";
      case Kind::M: return "M";
    }
    return "?";
  }

  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;
};

/// Accepts "M", "C0", "Lp" (p = 2), "Lp(3)", "Lp:3", "L1".
inline SpaceTag parse_space(std::string text) {
  if (text == "M") return SpaceTag::m();
  if (text == "C0") return SpaceTag::c0();
  if (text == "Lp") return SpaceTag::lp(2.0);
  std::string digits;
  if (text.rfind("Lp(", 0) == 0 && text.back() == ')') digits = text.substr(3, text.size() - 4);
  else if (text.rfind("Lp:", 0) == 0) digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'L') digits = text.substr(1);
  try {
    std::size_t used = 0;
    const double p = std::stod(digits, &used);
    if (used == digits.size()) return SpaceTag::lp(p);
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::invalid_argument, "unknown function space '" + text + "'");
}

/// Exponents (m_plus, m_minus) of the weighted space built from
/// [lambda/(lambda+i)]^m_plus and [lambda/(lambda-i)]^m_minus.
struct Powers {
  int plus = 0;
  int minus = 0;

  friend constexpr bool operator==(Powers, Powers) = default;
};

struct RefinedClaim {
  Powers solution_powers;
  int dim_ker;
  int rhs_rho_power;  // the statement needs f in the image of D_0^rhs_rho_power
};

struct Prediction {
  CaseLabel case_label;
  std::string clause;
  EquationKind equation = EquationKind::two_kernel;
  SpaceTag space;
  int dim_ker = 0;
  int dim_coker = 0;
  bool solvable_for_all_f = false;
  Powers solution_powers;          // (0, 0) means E itself
  std::vector<Powers> rhs_powers;  // alternatives; empty means f in E
  std::optional<RefinedClaim> refined;
};

struct SpecialFactor {
  double point;  // alpha_j, beta_j or gamma_j
  int exponent;  // m_j, n_j or l_j
};

struct FredholmData {
  int kappa = 0;
  int delta = 0;
  int sigma = 0;
  std::vector<SpecialFactor> plus;   // A_+ = prod D_{alpha_j}^{m_j}, r = plus.size()
  std::vector<SpecialFactor> minus;  // A_- = prod B_{beta_j}^{n_j},  s = minus.size()
  std::vector<SpecialFactor> rho;    // F   = prod D_{gamma_j}^{l_j}, q = rho.size()

  std::size_t r() const noexcept { return plus.size(); }
  std::size_t s() const noexcept { return minus.size(); }
  std::size_t q() const noexcept { return rho.size(); }
};

/// Fills delta and sigma from the space: both vanish for Lp and C0; in M,
/// delta = q and sigma = r + s.
inline FredholmData make_fredholm_data(int kappa, const SpaceTag& e, std::vector<SpecialFactor> plus,
                                       std::vector<SpecialFactor> minus, std::vector<SpecialFactor> rho) {
  for (const auto* list : {&plus, &minus, &rho}) {
    for (const auto& f : *list) {
      require(f.exponent >= 1, ErrorCode::invalid_argument, "factor exponents must be natural numbers");
    }
  }
  FredholmData fd;
  fd.kappa = kappa;
  fd.plus = std::move(plus);
  fd.minus = std::move(minus);
  fd.rho = std::move(rho);
  if (e.kind == SpaceTag::Kind::M) {
    fd.delta = static_cast<int>(fd.q());
    fd.sigma = static_cast<int>(fd.r() + fd.s());
  }
  return fd;
}

inline Sign moment_sign(double nu1, double tol) {
  if (nu1 > tol) return Sign::positive;
  if (nu1 < -tol) return Sign::negative;
  return Sign::zero;
}

inline CaseLabel classify_case(const Moments& m1, const Moments& m2, const MomentTolerances& tol = {}) {
  for (const Moments* m : {&m1, &m2}) {
    require(std::abs(m->nu0 - 1.0) < tol.conservative, ErrorCode::not_conservative,
            "nu0 = " + std::to_string(m->nu0) + " differs from 1");
  }
  const SignPattern pattern{moment_sign(m1.nu1, tol.moment), moment_sign(m2.nu1, tol.moment)};
  if ((pattern.first == Sign::zero && !m1.nu2_finite) || (pattern.second == Sign::zero && !m2.nu2_finite)) {
    throw Error(ErrorCode::unsupported_moment, "nu1 = 0 with infinite nu2 is not supported");
  }
  return case_label(pattern);
}

/// ind(b1/b2) for the reduced symbols of a pattern.
inline int theory_kappa(const CaseLabel& c) {
  const Sign s1 = c.pattern.first, s2 = c.pattern.second;
  // ind b1: 0 for nu1(K1) > 0, -1 otherwise (negative or zero);
  // ind b2: 1 for nu1(K2) >= 0, 0 for negative.
  const int ind_b1 = s1 == Sign::positive ? 0 : -1;
  const int ind_b2 = s2 == Sign::negative ? 0 : 1;
  return ind_b1 - ind_b2;
}

inline std::pair<int, int> dims_two_kernel_general(const FredholmData& fd) {
  return {std::max(fd.delta - fd.kappa, 0), std::max(fd.kappa - fd.delta, 0)};
}

inline std::pair<int, int> dims_paired_general(const FredholmData& fd) {
  return {std::max(fd.kappa + fd.sigma, 0), std::max(-fd.kappa - fd.sigma, 0)};
}

inline Prediction predict_two_kernel(const CaseLabel& c, const SpaceTag& e) {
  Prediction p;
  p.case_label = c;
  p.clause = c.clause;
  p.equation = EquationKind::two_kernel;
  p.space = e;
  p.dim_coker = 0;
  p.solvable_for_all_f = true;
  const std::string& k = c.clause;
  auto set = [&p](int dim, Powers powers) {
    p.dim_ker = dim;
    p.solution_powers = powers;
  };
  if (k == "I_1") set(1, {1, 1});
  else if (k == "I_2") set(0, {1, 1});
  else if (k == "I_3") set(2, {1, 1});
  else if (k == "II_1") set(1, {2, 1});
  else if (k == "II_2") set(2, {2, 1});
  else if (k == "III_1") set(1, {1, 2});
  else if (k == "III_2") set(2, {1, 2});
  else if (k == "IV") {
    set(2, {2, 2});
    // In M both homogeneous solutions already lie in the power-1 space; in
    // Lp / C0 exactly one does.
    p.refined = RefinedClaim{{1, 1}, e.kind == SpaceTag::Kind::M ? 2 : 1, 1};
  } else {
    throw Error(ErrorCode::unknown_case, "clause '" + k + "'");
  }
  return p;
}

/// Paired equations, solutions in M.
inline Prediction predict_paired(const CaseLabel& c) {
  Prediction p;
  p.case_label = c;
  p.equation = EquationKind::paired;
  p.space = SpaceTag::m();
  p.solvable_for_all_f = false;  // only for f in the stated image spaces
  p.solution_powers = {0, 0};
  const Sign s1 = c.pattern.first, s2 = c.pattern.second;
  auto set = [&p](const char* clause, int dim, std::vector<Powers> rhs) {
    p.clause = clause;
    p.dim_ker = dim;
    p.rhs_powers = std::move(rhs);
  };
  const bool nz1 = s1 != Sign::zero, nz2 = s2 != Sign::zero;
  if (nz1 && nz2) {
    if (s1 == Sign::negative && s2 == Sign::positive) set("I*_1", 0, {{1, 1}});
    else if (s1 == Sign::positive && s2 == Sign::negative) set("I*_3", 2, {{1, 1}});
    else set("I*_2", 1, {{1, 1}});
  } else if (!nz1 && nz2) {
    if (s2 == Sign::positive) set("II*_1", 1, {{2, 1}});
    else set("II*_2", 2, {{2, 1}});
  } else if (nz1 && !nz2) {
    if (s1 == Sign::negative) set("III*_1", 1, {{1, 2}});
    else set("III*_2", 2, {{1, 2}});
  } else {
    set("IV*", 1, {{2, 2}, {1, 1}});  // union of the two image spaces
  }
  return p;
}

}  // namespace cwh
