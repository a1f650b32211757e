#pragma once

// The special convolution operators D_alpha, B_alpha with symbols
// (lambda - alpha)/(lambda + i) and (lambda - alpha)/(lambda - i), the
// half-line projectors, and discrete surrogates of the weighted norms.
//
// Symbols act on e^{-i lambda t}: a convolution (K*phi)(t) = int K(t-s) phi(s) ds
// multiplies e^{-i lambda t} by int e^{i lambda u} K(u) du.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "cwh/classifier.hpp"
#include "cwh/error.hpp"
#include "cwh/grid_function.hpp"
#include "cwh/kernel_models.hpp"

namespace cwh {

enum class SpecialKind { B, D };
enum class Projector { P, Q };

struct OperatorFactor {
  SpecialKind kind;
  double alpha;
  int power;
};

/// Factors compose like operators: the last one acts first.
struct OperatorProduct {
  std::vector<OperatorFactor> factors;
};

namespace detail {

// Weights of phi at the near and far end of one step for
// int_0^h e^{-v} phi(t - v) dv with phi linear between the two nodes.
struct StepWeights {
  double decay, near, far;
};

inline StepWeights step_weights(double h) {
  const double far = h * exp_e1(-h);
  return {std::exp(-h), h * exp_e0(-h) - far, far};
}

}  // namespace detail

/// (D_alpha phi)(t) = phi(t) - (1 - i alpha) e^{-t} int_{-T}^t e^s phi(s) ds.
/// The inner integral accumulates step by step, exact for the piecewise
/// linear interpolant of phi; phi is taken as 0 outside the grid.
inline ComplexGridFunction apply_D_alpha(const ComplexGridFunction& phi, double alpha) {
  const std::size_t n = phi.size();
  const auto w = detail::step_weights(phi.grid.h());
  const std::complex<double> coeff{1.0, -alpha};
  ComplexGridFunction out(phi.grid);
  std::complex<double> acc{0.0, 0.0};
  out.values[0] = phi.values[0];
  for (std::size_t j = 1; j < n; ++j) {
    acc = w.decay * acc + w.far * phi.values[j - 1] + w.near * phi.values[j];
    out.values[j] = phi.values[j] - coeff * acc;
  }
  return out;
}

/// (B_alpha phi)(t) = phi(t) - (1 + i alpha) e^{t} int_t^T e^{-s} phi(s) ds.
inline ComplexGridFunction apply_B_alpha(const ComplexGridFunction& phi, double alpha) {
  const std::size_t n = phi.size();
  const auto w = detail::step_weights(phi.grid.h());
  const std::complex<double> coeff{1.0, alpha};
  ComplexGridFunction out(phi.grid);
  std::complex<double> acc{0.0, 0.0};
  out.values[n - 1] = phi.values[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) {
    acc = w.decay * acc + w.far * phi.values[j + 1] + w.near * phi.values[j];
    out.values[j] = phi.values[j] - coeff * acc;
  }
  return out;
}

inline ComplexGridFunction apply_special(const ComplexGridFunction& phi, SpecialKind kind, double alpha) {
  return kind == SpecialKind::D ? apply_D_alpha(phi, alpha) : apply_B_alpha(phi, alpha);
}

/// Closed-form symbol of D_alpha or B_alpha at lambda.
inline std::complex<double> special_symbol(SpecialKind kind, double alpha, double lambda) {
  const std::complex<double> i{0.0, 1.0};
  return (lambda - alpha) / (kind == SpecialKind::D ? lambda + i : lambda - i);
}

/// P keeps t >= 0 (the node t = 0 belongs to P), Q keeps t < 0.
template <class Scalar>
GridFunction<Scalar> apply_projection(const GridFunction<Scalar>& phi, Projector which) {
  GridFunction<Scalar> out = phi;
  const std::size_t c = phi.grid.center();
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const bool upper = j >= c;
    if (upper != (which == Projector::P)) out.values[j] = Scalar{};
  }
  return out;
}

inline ComplexGridFunction apply_product(const ComplexGridFunction& phi, const OperatorProduct& prod) {
  ComplexGridFunction out = phi;
  for (auto it = prod.factors.rbegin(); it != prod.factors.rend(); ++it) {
    require(it->power >= 1, ErrorCode::invalid_argument, "operator factor powers must be >= 1");
    for (int k = 0; k < it->power; ++k) out = apply_special(out, it->kind, it->alpha);
  }
  return out;
}

struct ProbeOptions {
  double T = 40.0;
  std::size_t n = 8001;
  double layer = 5.0;    // cosine taper width; measurement stays 3 layers inside
  double Lambda = 10.0;  // largest admissible |lambda0|
};

/// Empirical multiplier of D_alpha / B_alpha on a tapered e^{-i lambda0 t},
/// fitted by least squares on |t| <= T - 3 layer.
inline std::complex<double> operator_symbol_probe(SpecialKind kind, double alpha, double lambda0,
                                                  const ProbeOptions& opt = {}) {
  require(std::abs(lambda0) <= opt.Lambda, ErrorCode::invalid_argument, "probe frequency outside range");
  require(opt.layer > 0, ErrorCode::invalid_argument, "probe layer must be positive");
  require(opt.T - 3.0 * opt.layer >= opt.layer, ErrorCode::boundary_layer,
          "boundary layer too wide for the probe grid");
  const UniformGrid g(opt.T, opt.n);
  const double flat = opt.T - opt.layer;
  auto window = [&](double t) {
    const double a = std::abs(t);
    if (a <= flat) return 1.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (a - flat) / opt.layer));
  };
  const auto phi = ComplexGridFunction::sample(g, [&](double t) {
    return window(t) * std::exp(std::complex<double>{0.0, -lambda0 * t});
  });
  const auto image = apply_special(phi, kind, alpha);
  std::complex<double> num{0.0, 0.0};
  double den = 0.0;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (!g.interior(j, 3.0 * opt.layer)) continue;
    num += std::conj(phi.values[j]) * image.values[j];
    den += std::norm(phi.values[j]);
  }
  return num / den;
}

/// Surrogate of ||phi|| in the weighted space: ||D_0^{m+} P phi + B_0^{m-} Q phi||_E
/// over nodes with |t| <= T - exclusion. Lp norms carry the factor h^{1/p};
/// C0 and M use the max norm.
inline double weighted_norm_tilde(const ComplexGridFunction& phi, Powers powers, const SpaceTag& e,
                                  double exclusion = 0.0) {
  require(powers.plus >= 0 && powers.plus <= 2 && powers.minus >= 0 && powers.minus <= 2,
          ErrorCode::invalid_argument, "norm powers must lie in {0, 1, 2}");
  OperatorProduct plus, minus;
  if (powers.plus > 0) plus.factors.push_back({SpecialKind::D, 0.0, powers.plus});
  if (powers.minus > 0) minus.factors.push_back({SpecialKind::B, 0.0, powers.minus});
  const auto a = apply_product(apply_projection(phi, Projector::P), plus);
  const auto b = apply_product(apply_projection(phi, Projector::Q), minus);
  double acc = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    if (!phi.grid.interior(j, exclusion)) continue;
    const double v = std::abs(a.values[j] + b.values[j]);
    if (e.kind == SpaceTag::Kind::Lp) acc += std::pow(v, e.p);
    else acc = std::max(acc, v);
  }
  if (e.kind == SpaceTag::Kind::Lp) return std::pow(phi.grid.h() * acc, 1.0 / e.p);
  return acc;
}

}  // namespace cwh
