#pragma once

// Nonnegative L1 kernels with closed-form moments and transforms, plus the
// piecewise integrals the quadrature layers need.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cwh/cases.hpp"
#include "cwh/error.hpp"

namespace cwh {

struct OneSidedPlus {
  double p;  // K(t) = p e^{-pt}, t > 0
};

struct OneSidedMinus {
  double q;  // K(t) = q e^{qt}, t < 0
};

struct TwoSidedExp {
  double a, p, b, q;  // K(t) = a e^{-pt} 1_{t>0} + b e^{qt} 1_{t<0}
};

struct Sampled {
  std::vector<double> nodes;   // strictly increasing, finite support
  std::vector<double> values;  // nonnegative, linear interpolation between nodes
  double spacing = 0.0;        // uniform node spacing, 0 when non-uniform
};

/// Every analytic family is a special case of the two-piece exponential
/// a e^{-ps} (s > 0) + b e^{qs} (s < 0); closed forms are written once for it.
struct ExpPieces {
  double a, p, b, q;
};

class KernelModel {
 public:
  using Family = std::variant<OneSidedPlus, OneSidedMinus, TwoSidedExp, Sampled>;

  static KernelModel one_sided_plus(double p) {
    require(std::isfinite(p) && p > 0, ErrorCode::invalid_argument, "one_sided_plus needs p > 0");
    return KernelModel(OneSidedPlus{p});
  }
  static KernelModel one_sided_minus(double q) {
    require(std::isfinite(q) && q > 0, ErrorCode::invalid_argument, "one_sided_minus needs q > 0");
    return KernelModel(OneSidedMinus{q});
  }
  static KernelModel two_sided_exp(double a, double p, double b, double q) {
    require(std::isfinite(a) && a >= 0 && std::isfinite(b) && b >= 0, ErrorCode::invalid_argument,
            "two_sided_exp needs a, b >= 0");
    require(std::isfinite(p) && p > 0 && std::isfinite(q) && q > 0, ErrorCode::invalid_argument,
            "two_sided_exp needs p, q > 0");
    return KernelModel(TwoSidedExp{a, p, b, q});
  }
  /// Symmetric Laplace density e^{-|t|}/2.
  static KernelModel laplace() { return two_sided_exp(0.5, 1.0, 0.5, 1.0); }

  static KernelModel sampled(std::vector<double> nodes, std::vector<double> values) {
    require(nodes.size() >= 2 && nodes.size() == values.size(), ErrorCode::invalid_argument,
            "sampled kernel needs >= 2 nodes and matching values");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      require(std::isfinite(nodes[i]) && std::isfinite(values[i]), ErrorCode::invalid_argument,
              "sampled kernel entries must be finite");
      require(values[i] >= 0, ErrorCode::invalid_argument, "sampled kernel values must be >= 0");
      if (i > 0) {
        require(nodes[i] > nodes[i - 1], ErrorCode::invalid_argument,
                "sampled kernel nodes must be strictly increasing");
      }
    }
    double spacing = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (std::abs(nodes[i] - nodes[i - 1] - spacing) > 1e-12 * std::max(1.0, std::abs(spacing))) {
        spacing = 0.0;
        break;
      }
    }
    return KernelModel(Sampled{std::move(nodes), std::move(values), spacing});
  }

  const Family& family() const noexcept { return family_; }
  bool is_analytic() const noexcept { return !std::holds_alternative<Sampled>(family_); }

  std::string family_name() const {
    return std::visit(
        [](const auto& f) -> std::string {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, OneSidedPlus>) return "one_sided_plus";
          else if constexpr (std::is_same_v<F, OneSidedMinus>) return "one_sided_minus";
          else if constexpr (std::is_same_v<F, TwoSidedExp>) return "two_sided_exp";
          else return "sampled";
        },
        family_);
  }

  std::optional<ExpPieces> exp_pieces() const {
    return std::visit(
        [](const auto& f) -> std::optional<ExpPieces> {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, OneSidedPlus>) return ExpPieces{f.p, f.p, 0.0, 1.0};
          else if constexpr (std::is_same_v<F, OneSidedMinus>) return ExpPieces{0.0, 1.0, f.q, f.q};
          else if constexpr (std::is_same_v<F, TwoSidedExp>) return ExpPieces{f.a, f.p, f.b, f.q};
          else return std::nullopt;
        },
        family_);
  }

  const Sampled* sampled_data() const noexcept { return std::get_if<Sampled>(&family_); }

 private:
  explicit KernelModel(Family f) : family_(std::move(f)) {}
  Family family_;
};

struct Moments {
  double nu0 = 0.0;
  double nu1 = 0.0;
  double nu2 = 0.0;
  bool nu2_finite = true;
};

struct NumericMoments {
  Moments moments;
  /// Per-moment bound on the quadrature error: |Simpson - trapezoid|, which
  /// dominates the Simpson error for the smooth pieces integrated here.
  std::array<double, 3> error_bound{};
};

namespace detail {

// E0(x) = (e^x - 1)/x and E1(x) = (x e^x - e^x + 1)/x^2 = int_0^1 u e^{xu} du,
// with power series near 0. Works for real and complex arguments.
template <class T>
T exp_e0(T x) {
  using std::abs;
  if (abs(x) < 0.5) {
    T term = T(1), sum = T(1);
    for (int k = 1; k < 30; ++k) {
      term *= x / T(k + 1);
      sum += term;
    }
    return sum;
  }
  using std::exp;
  return (exp(x) - T(1)) / x;
}

template <class T>
T exp_e1(T x) {
  using std::abs;
  if (abs(x) < 0.5) {
    // sum_k x^k / (k! (k+2))
    T fact = T(1), sum = T(0.5);
    for (int k = 1; k < 30; ++k) {
      fact *= x / T(k);
      sum += fact / T(k + 2);
    }
    return sum;
  }
  using std::exp;
  const T ex = exp(x);
  return (x * ex - ex + T(1)) / (x * x);
}

inline double sampled_value(const Sampled& s, double t) {
  if (t < s.nodes.front() || t > s.nodes.back()) return 0.0;
  auto it = std::upper_bound(s.nodes.begin(), s.nodes.end(), t);
  if (it == s.nodes.end()) return s.values.back();
  const std::size_t j = static_cast<std::size_t>(it - s.nodes.begin());
  const double x0 = s.nodes[j - 1], x1 = s.nodes[j];
  const double w = (t - x0) / (x1 - x0);
  return (1.0 - w) * s.values[j - 1] + w * s.values[j];
}

// Integrate g(s) K(s) over [lo, hi] for a sampled kernel, exactly when g is a
// polynomial of degree <= 2 (Simpson on every linear piece of K).
template <class G>
long double sampled_integral(const Sampled& s, long double lo, long double hi, G&& g) {
  if (hi <= lo) return 0.0L;
  const long double a = std::max<long double>(lo, s.nodes.front());
  const long double b = std::min<long double>(hi, s.nodes.back());
  if (b <= a) return 0.0L;
  std::vector<long double> cuts{a};
  for (double x : s.nodes) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double u0 = cuts[i], u1 = cuts[i + 1], um = 0.5L * (u0 + u1);
    // Evaluate K through the linear piece containing the midpoint so that
    // endpoint values are one-sided limits.
    auto it = std::upper_bound(s.nodes.begin(), s.nodes.end(), static_cast<double>(um));
    const std::size_t j = static_cast<std::size_t>(it - s.nodes.begin());
    const long double x0 = s.nodes[j - 1], x1 = s.nodes[j];
    const long double v0 = s.values[j - 1], v1 = s.values[j];
    auto k = [&](long double u) { return v0 + (v1 - v0) * (u - x0) / (x1 - x0); };
    total += (u1 - u0) / 6.0L * (k(u0) * g(u0) + 4.0L * k(um) * g(um) + k(u1) * g(u1));
  }
  return total;
}

inline long double factorial(int k) {
  long double f = 1.0L;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Pointwise value. At the jump t = 0 of the exponential families the
/// midpoint (a + b)/2 is returned.
inline double eval_kernel(const KernelModel& k, double t) {
  if (const auto* s = k.sampled_data()) return detail::sampled_value(*s, t);
  const ExpPieces e = *k.exp_pieces();
  if (t > 0) return e.a * std::exp(-e.p * t);
  if (t < 0) return e.b * std::exp(e.q * t);
  return 0.5 * (e.a + e.b);
}

/// One-sided limit K(t+) (side > 0) or K(t-) (side < 0).
inline double eval_kernel_limit(const KernelModel& k, double t, int side) {
  if (const auto* s = k.sampled_data()) {
    if (t == s->nodes.front() && side < 0) return 0.0;
    if (t == s->nodes.back() && side > 0) return 0.0;
    return detail::sampled_value(*s, t);
  }
  const ExpPieces e = *k.exp_pieces();
  if (t > 0 || (t == 0 && side > 0)) return e.a * std::exp(-e.p * t);
  return e.b * std::exp(e.q * t);
}

inline Moments moments_analytic(const KernelModel& k) {
  const auto e = k.exp_pieces();
  require(e.has_value(), ErrorCode::invalid_argument,
          "moments_analytic needs an analytic family; use moments_numeric for sampled kernels");
  Moments m;
  m.nu0 = e->a / e->p + e->b / e->q;
  m.nu1 = e->a / (e->p * e->p) - e->b / (e->q * e->q);
  m.nu2 = 2.0 * e->a / (e->p * e->p * e->p) + 2.0 * e->b / (e->q * e->q * e->q);
  m.nu2_finite = true;
  return m;
}

/// Composite Simpson quadrature of t^m K(t) on [-truncation, truncation],
/// split at t = 0 where the exponential families are not smooth.
inline NumericMoments moments_numeric(const KernelModel& k, double truncation = 40.0,
                                      std::size_t n = 4001) {
  require(truncation > 0 && std::isfinite(truncation), ErrorCode::invalid_argument,
          "truncation must be positive");
  require(n >= 16, ErrorCode::invalid_argument, "moments_numeric needs n >= 16");
  std::size_t m = (n - 1) / 2;  // intervals per half line
  if (m % 2 == 1) ++m;
  const double h = truncation / static_cast<double>(m);

  std::array<long double, 3> simpson{}, trapezoid{};
  for (int side : {-1, 1}) {
    for (std::size_t j = 0; j <= m; ++j) {
      const double t = side * static_cast<double>(j) * h;
      const double kv = (j == 0) ? eval_kernel_limit(k, 0.0, side) : eval_kernel(k, t);
      const long double ws = (j == 0 || j == m) ? 1.0L : (j % 2 == 1 ? 4.0L : 2.0L);
      const long double wt = (j == 0 || j == m) ? 0.5L : 1.0L;
      long double tp = 1.0L;
      for (int p = 0; p < 3; ++p) {
        simpson[p] += ws * tp * kv;
        trapezoid[p] += wt * tp * kv;
        tp *= t;
      }
    }
  }
  NumericMoments out;
  std::array<double, 3> s{};
  for (int p = 0; p < 3; ++p) {
    s[p] = static_cast<double>(simpson[p] * h / 3.0L);
    out.error_bound[p] = std::abs(s[p] - static_cast<double>(trapezoid[p] * h));
  }
  out.moments = Moments{s[0], s[1], s[2], true};
  return out;
}

/// Moments for any family: closed form when available, quadrature otherwise.
inline Moments moments_of(const KernelModel& k) {
  return k.is_analytic() ? moments_analytic(k) : moments_numeric(k).moments;
}

/// Canonical conservative pair realizing a sign pattern: positive first
/// moment via OneSidedPlus(1), negative via OneSidedMinus(1), zero via the
/// Laplace density.
inline std::pair<KernelModel, KernelModel> make_case_pair(const CaseLabel& c) {
  auto pick = [](Sign s) {
    switch (s) {
      case Sign::positive: return KernelModel::one_sided_plus(1.0);
      case Sign::negative: return KernelModel::one_sided_minus(1.0);
      case Sign::zero: return KernelModel::laplace();
    }
    throw Error(ErrorCode::unknown_case, "bad sign");
  };
  (void)case_label(c.pattern);  // validates the label
  return {pick(c.pattern.first), pick(c.pattern.second)};
}

// ---------------------------------------------------------------------------
// Piecewise integrals used by product-integration quadrature.

struct SegmentMoments {
  long double j0;  // int_{s_a}^{s_a+h} K(s) ds
  long double j1;  // int_{s_a}^{s_a+h} (s - s_a)/h K(s) ds
};

/// Integrals of K over [s_a, s_a + h]. For the exponential families the
/// segment must not straddle s = 0.
inline SegmentMoments segment_moments(const KernelModel& k, long double s_a, long double h) {
  if (const auto* s = k.sampled_data()) {
    return {detail::sampled_integral(*s, s_a, s_a + h, [](long double) { return 1.0L; }),
            detail::sampled_integral(*s, s_a, s_a + h,
                                     [&](long double u) { return (u - s_a) / h; })};
  }
  const ExpPieces e = *k.exp_pieces();
  long double amp, c;
  if (s_a >= 0) {
    amp = e.a * std::exp(-static_cast<long double>(e.p) * s_a);
    c = -static_cast<long double>(e.p);
  } else {
    require(s_a + h <= 1e-12L * h, ErrorCode::invalid_argument, "segment straddles s = 0");
    amp = e.b * std::exp(static_cast<long double>(e.q) * s_a);
    c = static_cast<long double>(e.q);
  }
  const long double x = c * h;
  return {amp * h * detail::exp_e0(x), amp * h * detail::exp_e1(x)};
}

enum class TailSide { right, left };

/// Tail moments used by polynomial extrapolation beyond a truncated grid:
///   right: R_k(x) = int_0^inf u^k K(x - u) du   (requires x <= 0 for exp families)
///   left:  L_k(x) = int_0^inf u^k K(x + u) du   (requires x >= 0 for exp families)
/// for k = 0, 1, 2.
inline std::array<long double, 3> tail_moments(const KernelModel& k, long double x, TailSide side) {
  std::array<long double, 3> out{};
  if (const auto* s = k.sampled_data()) {
    for (int p = 0; p < 3; ++p) {
      if (side == TailSide::right) {
        out[p] = detail::sampled_integral(*s, s->nodes.front(), x,
                                          [&](long double v) { return std::pow(x - v, p); });
      } else {
        out[p] = detail::sampled_integral(*s, x, s->nodes.back(),
                                          [&](long double v) { return std::pow(v - x, p); });
      }
    }
    return out;
  }
  const ExpPieces e = *k.exp_pieces();
  if (side == TailSide::right) {
    require(x <= 0, ErrorCode::invalid_argument, "right tail moments need x <= 0");
    const long double q = e.q;
    const long double base = e.b * std::exp(q * x);
    for (int p = 0; p < 3; ++p) out[p] = base * detail::factorial(p) / std::pow(q, p + 1);
  } else {
    require(x >= 0, ErrorCode::invalid_argument, "left tail moments need x >= 0");
    const long double pr = e.p;
    const long double base = e.a * std::exp(-pr * x);
    for (int p = 0; p < 3; ++p) out[p] = base * detail::factorial(p) / std::pow(pr, p + 1);
  }
  return out;
}

/// Fourier transform int e^{i lambda t} K(t) dt.
inline std::complex<double> fourier_transform(const KernelModel& k, double lambda) {
  using C = std::complex<double>;
  const C i{0.0, 1.0};
  if (const auto* s = k.sampled_data()) {
    // Exact for the piecewise-linear interpolant.
    C total{0.0, 0.0};
    for (std::size_t j = 0; j + 1 < s->nodes.size(); ++j) {
      const double t0 = s->nodes[j], d = s->nodes[j + 1] - t0;
      const double v0 = s->values[j], v1 = s->values[j + 1];
      const C z = i * lambda * d;
      total += std::exp(i * lambda * t0) * d * (v0 * detail::exp_e0(z) + (v1 - v0) * detail::exp_e1(z));
    }
    return total;
  }
  const ExpPieces e = *k.exp_pieces();
  return e.a / (e.p - i * lambda) + e.b / (e.q + i * lambda);
}

}  // namespace cwh
