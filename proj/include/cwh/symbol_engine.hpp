#pragma once

// Symbols a(lambda) = c - int e^{i lambda t} K(t) dt on a compactified
// lambda-grid, removal of the zero at lambda = 0, and winding numbers.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "cwh/error.hpp"
#include "cwh/kernel_models.hpp"

namespace cwh {

using Complex = std::complex<double>;

struct ConvolutionOperatorSpec {
  Complex c{1.0, 0.0};
  KernelModel kernel;

  explicit ConvolutionOperatorSpec(KernelModel k, Complex constant = {1.0, 0.0})
      : c(constant), kernel(std::move(k)) {
    require(c != Complex{0.0, 0.0}, ErrorCode::invalid_argument, "operator constant must be nonzero");
  }
};

struct SymbolGrid {
  std::vector<double> lambdas;  // strictly increasing, symmetric, 0 is a node
  std::vector<Complex> values;
  Complex tail_limit{1.0, 0.0};  // value at lambda = +-infinity
  bool via_quadrature = false;   // sampled kernels are transformed numerically

  std::size_t size() const noexcept { return lambdas.size(); }
  std::size_t zero_index() const {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (lambdas[i] == 0.0) return i;
    }
    throw Error(ErrorCode::grid_mismatch, "symbol grid has no node at lambda = 0");
  }
};

struct ZeroOrder {
  int order;  // 1 or 2

  friend constexpr bool operator==(ZeroOrder, ZeroOrder) = default;
};

enum class Half { upper, lower };

struct IndexResult {
  int winding = 0;
  std::vector<double> unwrapped_phase;  // along the grid, without tail pieces
  double min_modulus = 0.0;
  double total_phase = 0.0;  // including both tail pieces
};

struct SymbolValue {
  Complex value;
  bool via_quadrature;
};

struct SymbolGridOptions {
  double Lambda = 200.0;
  std::size_t n = 2001;
  double scale = 1.0;  // lambda = scale * tan(theta)
  int max_refinements = 10;
};

struct MomentTolerances {
  double conservative = 1e-9;  // |nu0 - 1|
  double moment = 1e-9;        // |nu1| at or below this counts as zero
};

/// Adjacent unwrapped phase increments larger than this trigger refinement
/// (build_symbol_grid) or an error (winding_number).
inline constexpr double kMaxPhaseStep = std::numbers::pi / 2;
inline constexpr double kVanishingModulus = 1e-10;

inline SymbolValue symbol_eval_detailed(const ConvolutionOperatorSpec& op, double lambda) {
  require(std::isfinite(lambda), ErrorCode::invalid_argument, "lambda must be finite");
  const Complex i{0.0, 1.0};
  if (!op.kernel.is_analytic()) return {op.c - fourier_transform(op.kernel, lambda), true};
  if (op.c == Complex{1.0, 0.0}) {
    // Cancellation-free forms for c = 1 so that the zero at lambda = 0 is resolved.
    if (const auto* f = std::get_if<OneSidedPlus>(&op.kernel.family())) {
      return {lambda / (lambda + i * f->p), false};
    }
    if (const auto* f = std::get_if<OneSidedMinus>(&op.kernel.family())) {
      return {lambda / (lambda - i * f->q), false};
    }
    const ExpPieces e = *op.kernel.exp_pieces();
    const double c0 = e.p * e.q - e.a * e.q - e.b * e.p;  // p q (1 - nu0)
    const Complex num = c0 + lambda * lambda + i * lambda * (e.p - e.q - e.a + e.b);
    return {num / ((e.p - i * lambda) * (e.q + i * lambda)), false};
  }
  return {op.c - fourier_transform(op.kernel, lambda), false};
}

inline Complex symbol_eval(const ConvolutionOperatorSpec& op, double lambda) {
  return symbol_eval_detailed(op, lambda).value;
}

/// Arctangent-spaced symmetric nodes on [-Lambda, Lambda]; n is rounded up
/// to an odd count so that lambda = 0 is a node.
inline std::vector<double> arctan_nodes(double Lambda, std::size_t n, double scale = 1.0) {
  require(Lambda > 0 && scale > 0, ErrorCode::invalid_argument, "Lambda and scale must be positive");
  if (n % 2 == 0) ++n;
  const std::size_t m = (n - 1) / 2;
  const double theta_max = std::atan(Lambda / scale);
  std::vector<double> out(n);
  out[m] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double lam = (k == m) ? Lambda : scale * std::tan(theta_max * static_cast<double>(k) / m);
    out[m + k] = lam;
    out[m - k] = -lam;
  }
  return out;
}

namespace detail {

inline double max_phase_step(std::span<const Complex> v) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    if (std::abs(v[k]) < kVanishingModulus || std::abs(v[k + 1]) < kVanishingModulus) continue;
    worst = std::max(worst, std::abs(std::arg(v[k + 1] / v[k])));
  }
  return worst;
}

}  // namespace detail

inline SymbolGrid build_symbol_grid(const ConvolutionOperatorSpec& op, const SymbolGridOptions& opt = {}) {
  require(opt.Lambda > 0, ErrorCode::invalid_argument, "Lambda must be positive");
  require(opt.n >= 64, ErrorCode::invalid_argument, "symbol grid needs n >= 64");
  std::size_t n = opt.n;
  for (int attempt = 0; attempt <= opt.max_refinements; ++attempt, n = 2 * n - 1) {
    SymbolGrid g;
    g.lambdas = arctan_nodes(opt.Lambda, n, opt.scale);
    g.values.resize(g.lambdas.size());
    for (std::size_t k = 0; k < g.lambdas.size(); ++k) {
      const SymbolValue sv = symbol_eval_detailed(op, g.lambdas[k]);
      g.values[k] = sv.value;
      g.via_quadrature = g.via_quadrature || sv.via_quadrature;
    }
    g.tail_limit = op.c;
    if (detail::max_phase_step(g.values) < kMaxPhaseStep) return g;
  }
  throw Error(ErrorCode::refinement_failed, "phase jumps persist after maximal refinement");
}

inline ZeroOrder zero_order(const Moments& m, const MomentTolerances& tol = {}) {
  require(std::abs(m.nu0 - 1.0) < tol.conservative, ErrorCode::not_conservative,
          "nu0 = " + std::to_string(m.nu0) + " differs from 1");
  if (std::abs(m.nu1) > tol.moment) return {1};
  require(m.nu2_finite, ErrorCode::unsupported_moment, "nu1 = 0 with infinite nu2 is not supported");
  return {2};
}

/// Divides out [lambda/(lambda +- i)]^order; the removable singularity at 0
/// is filled from the moments.
inline SymbolGrid reduce_symbol(const SymbolGrid& g, ZeroOrder order, Half half, const Moments& m) {
  require(order.order == 1 || order.order == 2, ErrorCode::invalid_argument, "zero order must be 1 or 2");
  const std::size_t z = g.zero_index();
  const Complex i{0.0, 1.0};
  SymbolGrid out = g;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k == z) continue;
    const double lam = g.lambdas[k];
    const Complex factor = (half == Half::upper ? (lam + i) : (lam - i)) / lam;
    out.values[k] = g.values[k] * (order.order == 1 ? factor : factor * factor);
  }
  if (order.order == 1) {
    out.values[z] = half == Half::upper ? Complex{m.nu1, 0.0} : Complex{-m.nu1, 0.0};
  } else {
    out.values[z] = Complex{-0.5 * m.nu2, 0.0};
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (std::abs(out.values[k]) < kVanishingModulus) {
      throw Error(ErrorCode::vanishing_symbol,
                  "reduced symbol vanishes at lambda = " + std::to_string(out.lambdas[k]));
    }
  }
  return out;
}

inline IndexResult winding_number(const SymbolGrid& g) {
  require(!g.values.empty(), ErrorCode::invalid_argument, "empty symbol grid");
  IndexResult r;
  r.min_modulus = std::abs(g.tail_limit);
  for (const Complex& v : g.values) r.min_modulus = std::min(r.min_modulus, std::abs(v));
  if (r.min_modulus <= kVanishingModulus) {
    throw Error(ErrorCode::vanishing_symbol, "symbol vanishes; index undefined");
  }
  r.unwrapped_phase.resize(g.size());
  r.unwrapped_phase[0] = std::arg(g.values[0]);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double step = std::arg(g.values[k] / g.values[k - 1]);
    if (std::abs(step) >= kMaxPhaseStep) {
      throw Error(ErrorCode::refinement_failed,
                  "phase jump " + std::to_string(step) + " near lambda = " + std::to_string(g.lambdas[k]));
    }
    r.unwrapped_phase[k] = r.unwrapped_phase[k - 1] + step;
  }
  // Tail pieces (-inf, -Lambda] and [Lambda, inf): the symbol is within a
  // small neighbourhood of its limit there, so principal arguments suffice.
  const double head = std::arg(g.values.front() / g.tail_limit);
  const double tail = std::arg(g.tail_limit / g.values.back());
  r.total_phase = head + (r.unwrapped_phase.back() - r.unwrapped_phase.front()) + tail;
  const double turns = r.total_phase / (2.0 * std::numbers::pi);
  r.winding = static_cast<int>(std::lround(turns));
  if (std::abs(turns - r.winding) >= 0.1) {
    throw Error(ErrorCode::numerical, "winding residual " + std::to_string(turns - r.winding));
  }
  return r;
}

inline SymbolGrid quotient(const SymbolGrid& num, const SymbolGrid& den) {
  require(num.lambdas == den.lambdas, ErrorCode::grid_mismatch, "symbol grids must share their nodes");
  SymbolGrid out = num;
  for (std::size_t k = 0; k < out.size(); ++k) out.values[k] = num.values[k] / den.values[k];
  out.tail_limit = num.tail_limit / den.tail_limit;
  out.via_quadrature = num.via_quadrature || den.via_quadrature;
  return out;
}

inline int relative_index(const SymbolGrid& b1, const SymbolGrid& b2) {
  return winding_number(quotient(b1, b2)).winding;
}

/// Largest |value(-lambda) - conj(value(lambda))| over the grid.
inline double hermitian_defect(const SymbolGrid& g) {
  double worst = 0.0;
  const std::size_t n = g.size();
  for (std::size_t k = 0; k < n; ++k) {
    worst = std::max(worst, std::abs(g.values[n - 1 - k] - std::conj(g.values[k])));
  }
  return worst;
}

/// Phase unwrapped along the grid; nodes where the symbol vanishes get NaN
/// and the unwrapping continues from the next nonzero node.
inline std::vector<double> unwrap_phase(const SymbolGrid& g) {
  std::vector<double> out(g.size(), std::numeric_limits<double>::quiet_NaN());
  bool have = false;
  double last = 0.0;
  Complex last_v;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex v = g.values[k];
    if (std::abs(v) < kVanishingModulus) continue;
    last = have ? last + std::arg(v / last_v) : std::arg(v);
    last_v = v;
    have = true;
    out[k] = last;
  }
  return out;
}

/// CSV columns: lambda, re, im, unwrapped_phase.
inline void write_csv(std::ostream& os, const SymbolGrid& g) {
  const auto phase = unwrap_phase(g);
  os.precision(17);
  os << "lambda,re,im,unwrapped_phase\n";
  for (std::size_t k = 0; k < g.size(); ++k) {
    os << g.lambdas[k] << ',' << g.values[k].real() << ',' << g.values[k].imag() << ',' << phase[k] << '\n';
  }
}

}  // namespace cwh
