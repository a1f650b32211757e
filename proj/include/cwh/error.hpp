#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cwh {

enum class ErrorCode {
  invalid_argument,
  not_conservative,
  unsupported_moment,  // nu_1 = 0 together with an infinite nu_2
  vanishing_symbol,
  refinement_failed,
  grid_mismatch,
  boundary_layer,
  unknown_case,
  config,
  io,
  numerical,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::not_conservative: return "not_conservative";
    case ErrorCode::unsupported_moment: return "unsupported_moment";
    case ErrorCode::vanishing_symbol: return "vanishing_symbol";
    case ErrorCode::refinement_failed: return "refinement_failed";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::boundary_layer: return "boundary_layer";
    case ErrorCode::unknown_case: return "unknown_case";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::numerical: return "numerical";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace cwh
