#pragma once

// Sign patterns of the first moments of a conservative kernel pair and the
// case / clause labels attached to them.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "cwh/error.hpp"

namespace cwh {

enum class Sign { negative, zero, positive };

/// Equation kinds: two kernels split by the sign of the integration variable, or
/// paired equations split by the sign of the evaluation point.
enum class EquationKind { two_kernel, paired };

constexpr std::string_view to_string(EquationKind k) {
  return k == EquationKind::two_kernel ? "two_kernel" : "paired";
}

inline EquationKind parse_equation_kind(std::string_view text) {
  if (text == "two_kernel") return EquationKind::two_kernel;
  if (text == "paired") return EquationKind::paired;
  throw Error(ErrorCode::invalid_argument, "unknown equation kind '" + std::string(text) + "'");
}

constexpr char sign_char(Sign s) {
  switch (s) {
    case Sign::negative: return '-';
    case Sign::zero: return '0';
    case Sign::positive: return '+';
  }
  return '?';
}

struct SignPattern {
  Sign first;   // sign of nu_1(K_1)
  Sign second;  // sign of nu_1(K_2)

  friend constexpr bool operator==(SignPattern, SignPattern) = default;
};

inline std::string to_string(SignPattern s) {
  return std::string{'(', sign_char(s.first), ',', sign_char(s.second), ')'};
}

struct CaseLabel {
  SignPattern pattern;
  std::optional<int> case_number;  // 1..8; empty for the double-zero pattern
  std::string clause;              // clause id, e.g. "I_3" or "I*_1"

  std::string name() const { return case_number ? std::to_string(*case_number) : "IV"; }

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

namespace detail {

struct CaseRow {
  SignPattern pattern;
  int number;  // 0 for the double-zero pattern
  std::string_view clause;
};

inline constexpr std::array<CaseRow, 9> kCaseTable{{
    {{Sign::negative, Sign::positive}, 1, "I_3"},
    {{Sign::zero, Sign::positive}, 2, "II_2"},
    {{Sign::zero, Sign::negative}, 3, "II_1"},
    {{Sign::negative, Sign::zero}, 4, "III_2"},
    {{Sign::positive, Sign::zero}, 5, "III_1"},
    {{Sign::positive, Sign::negative}, 6, "I_2"},
    {{Sign::negative, Sign::negative}, 7, "I_1"},
    {{Sign::positive, Sign::positive}, 8, "I_1"},
    {{Sign::zero, Sign::zero}, 0, "IV"},
}};

}  // namespace detail

inline CaseLabel case_label(SignPattern pattern) {
  for (const auto& row : detail::kCaseTable) {
    if (row.pattern == pattern) {
      CaseLabel label{pattern, std::nullopt, std::string(row.clause)};
      if (row.number != 0) label.case_number = row.number;
      return label;
    }
  }
  throw Error(ErrorCode::unknown_case, "sign pattern " + to_string(pattern));
}

/// All nine labels, cases 1..8 followed by the double-zero pattern.
inline std::array<CaseLabel, 9> all_case_labels() {
  std::array<CaseLabel, 9> out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = case_label(detail::kCaseTable[i].pattern);
  return out;
}

/// Accepts "1".."8", "IV", "double_zero" or a pattern such as "(-,+)" / "-+".
inline CaseLabel parse_case_label(std::string_view text) {
  if (text == "IV" || text == "iv" || text == "double_zero" || text == "0,0" || text == "(0,0)") {
    return case_label({Sign::zero, Sign::zero});
  }
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '8') {
    return case_label(detail::kCaseTable[static_cast<std::size_t>(text[0] - '1')].pattern);
  }
  std::string compact;
  for (char c : text) {
    if (c == '+' || c == '-' || c == '0') compact.push_back(c);
    else if (c != '(' && c != ')' && c != ',' && c != ' ') compact = "!";
  }
  auto to_sign = [](char c) {
    return c == '+' ? Sign::positive : (c == '-' ? Sign::negative : Sign::zero);
  };
  if (compact.size() == 2) return case_label({to_sign(compact[0]), to_sign(compact[1])});
  throw Error(ErrorCode::unknown_case, "cannot parse case label '" + std::string(text) + "'");
}

}  // namespace cwh
