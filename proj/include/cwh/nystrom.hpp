#pragma once

// Nystrom discretization of the two-kernel and paired equations on [-T, T].
//
// The unknown is the piecewise-linear interpolant of its node values, and
// every kernel integral over a grid cell is done exactly (product
// integration). Beyond +-T the unknown is continued by a low-degree
// polynomial through the outermost nodes, which lets constant and linear
// solutions exist on the truncated grid. The dimension of the discrete
// solution space then comes from a gap in the singular values.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cwh/cases.hpp"
#include "cwh/classifier.hpp"
#include "cwh/error.hpp"
#include "cwh/grid_function.hpp"
#include "cwh/kernel_models.hpp"
#include "cwh/linalg.hpp"
#include "cwh/parallel.hpp"

namespace cwh {

/// Degree of the polynomial continuation beyond each end of the grid;
/// -1 drops the tail (plain truncation).
struct TailClosure {
  int right = 1;
  int left = 1;

  static constexpr TailClosure truncate() { return {-1, -1}; }
  static constexpr TailClosure uniform(int degree) { return {degree, degree}; }

  friend constexpr bool operator==(TailClosure, TailClosure) = default;
};

struct AssemblyOptions {
  int weight_power = 0;  // similarity weight (1 + |t|)^m
  TailClosure closure{};
};

struct DiscreteOperator {
  EquationKind kind;
  KernelModel k1;
  KernelModel k2;
  UniformGrid grid;
  Eigen::MatrixXd matrix;  // diag(w^-m) (I - C) diag(w^m); real because the kernels are
  std::vector<double> quadrature_weights;  // trapezoid weights, informational
  int weight_power = 0;
  TailClosure closure{};
  Eigen::VectorXd scaling;  // w^m; a weighted coordinate psi stands for phi = scaling .* psi
};

namespace detail {

// Lagrange basis through the nodes v = 0, -1, ..., -d (v in units of h away
// from the grid end), as coefficients of 1, v, v^2.
inline const std::array<std::array<long double, 3>, 3>& tail_basis(int degree) {
  static const std::array<std::array<std::array<long double, 3>, 3>, 3> table{{
      {{{1.0L, 0.0L, 0.0L}, {}, {}}},
      {{{1.0L, 1.0L, 0.0L}, {0.0L, -1.0L, 0.0L}, {}}},
      {{{1.0L, 1.5L, 0.5L}, {0.0L, -2.0L, -1.0L}, {0.0L, 0.5L, 0.5L}}},
  }};
  return table.at(static_cast<std::size_t>(degree));
}

// Cell integrals J0, J1 for every offset r = i - k - 1 in [-(n-1), n-2],
// stored at index r + n - 1.
struct CellTable {
  std::vector<long double> j0, j1;
};

inline CellTable cell_table(const KernelModel& k, const UniformGrid& g) {
  const std::size_t n = g.n;
  const long double h = static_cast<long double>(g.T) / static_cast<long double>(g.center());
  CellTable out;
  out.j0.resize(2 * n - 2);
  out.j1.resize(2 * n - 2);
  for (std::size_t idx = 0; idx < 2 * n - 2; ++idx) {
    const long double r = static_cast<long double>(idx) - static_cast<long double>(n - 1);
    const SegmentMoments m = segment_moments(k, r * h, h);
    out.j0[idx] = m.j0;
    out.j1[idx] = m.j1;
  }
  return out;
}

class RowBuilder {
 public:
  RowBuilder(EquationKind kind, const KernelModel& k1, const KernelModel& k2, const UniformGrid& g,
             TailClosure closure)
      : kind_(kind), k1_(k1), k2_(k2), grid_(g), closure_(closure),
        t1_(cell_table(k1, g)), t2_(cell_table(k2, g)) {
    for (int d : {closure.right, closure.left}) {
      require(d >= -1 && d <= 2, ErrorCode::invalid_argument, "tail closure degree must be in -1..2");
      require(static_cast<std::size_t>(d + 1) <= g.n, ErrorCode::invalid_argument,
              "grid too small for the tail closure");
    }
  }

  /// Writes the integral-operator weights of row i (without the identity).
  void row(std::size_t i, std::span<long double> out) const {
    const std::size_t n = grid_.n, c = grid_.center();
    const long double h = static_cast<long double>(grid_.T) / static_cast<long double>(c);
    std::fill(out.begin(), out.end(), 0.0L);
    const bool paired = kind_ == EquationKind::paired;
    const CellTable& row_table = (i < c) ? t1_ : t2_;  // paired: K1 for t_i < 0
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const CellTable& tab = paired ? row_table : (k >= c ? t1_ : t2_);
      const std::size_t idx = i + n - 2 - k;  // (i - k - 1) + (n - 1)
      out[k] += tab.j1[idx];
      out[k + 1] += tab.j0[idx] - tab.j1[idx];
    }
    const KernelModel& right_kernel = paired ? (i < c ? k1_ : k2_) : k1_;
    const KernelModel& left_kernel = paired ? (i < c ? k1_ : k2_) : k2_;
    const long double ti = (static_cast<long double>(i) - static_cast<long double>(c)) * h;
    const long double T = static_cast<long double>(grid_.T);
    if (closure_.right >= 0) {
      const auto mom = tail_moments(right_kernel, ti - T, TailSide::right);
      add_tail(out, mom, closure_.right, h, [n](std::size_t j) { return n - 1 - j; });
    }
    if (closure_.left >= 0) {
      const auto mom = tail_moments(left_kernel, ti + T, TailSide::left);
      add_tail(out, mom, closure_.left, h, [](std::size_t j) { return j; });
    }
  }

 private:
  template <class NodeOf>
  static void add_tail(std::span<long double> out, const std::array<long double, 3>& mom, int degree,
                       long double h, NodeOf node_of) {
    const auto& basis = tail_basis(degree);
    for (int j = 0; j <= degree; ++j) {
      long double w = 0.0L, hk = 1.0L;
      for (int k = 0; k <= degree; ++k, hk *= h) w += basis[j][k] * mom[k] / hk;
      out[node_of(static_cast<std::size_t>(j))] += w;
    }
  }

  EquationKind kind_;
  const KernelModel& k1_;
  const KernelModel& k2_;
  UniformGrid grid_;
  TailClosure closure_;
  CellTable t1_, t2_;
};

}  // namespace detail

inline Eigen::VectorXd growth_weights(const UniformGrid& g, int power) {
  Eigen::VectorXd w(g.n);
  for (std::size_t j = 0; j < g.n; ++j) w[j] = std::pow(1.0 + std::abs(g.t(j)), power);
  return w;
}

/// Two-kernel: the cell [t_k, t_k+1] integrates against K1 when t_k >= 0,
/// against K2 otherwise. Paired: row i uses K1 when t_i < 0, K2 otherwise.
inline DiscreteOperator assemble(const KernelModel& k1, const KernelModel& k2, EquationKind kind,
                                 const UniformGrid& grid, const AssemblyOptions& opt = {}) {
  require(opt.weight_power >= 0, ErrorCode::invalid_argument, "weight_power must be >= 0");
  const std::size_t n = grid.n;
  DiscreteOperator op{kind, k1, k2, grid, Eigen::MatrixXd(n, n), {}, opt.weight_power, opt.closure,
                      growth_weights(grid, opt.weight_power)};
  const detail::RowBuilder rows(kind, op.k1, op.k2, grid, opt.closure);
  const Eigen::VectorXd& w = op.scaling;
  parallel_for(n, [&](std::size_t i) {
    std::vector<long double> row(n);
    rows.row(i, row);
    for (std::size_t j = 0; j < n; ++j) {
      const long double v = (i == j ? 1.0L : 0.0L) - row[j];
      op.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(v) * w[static_cast<Eigen::Index>(j)] / w[static_cast<Eigen::Index>(i)];
    }
  });
  op.quadrature_weights.assign(n, grid.h());
  op.quadrature_weights.front() = op.quadrature_weights.back() = 0.5 * grid.h();
  return op;
}

inline DiscreteOperator assemble(const KernelModel& k1, const KernelModel& k2, EquationKind kind, double T,
                                 std::size_t n, const AssemblyOptions& opt = {}) {
  return assemble(k1, k2, kind, UniformGrid(T, n), opt);
}

/// (I - C) phi through the assembled matrix, undoing the similarity weight.
inline ComplexGridFunction apply(const DiscreteOperator& op, const ComplexGridFunction& phi) {
  require_same_grid(op.grid, phi.grid);
  const Eigen::Index n = op.matrix.cols();
  Eigen::MatrixXd x(n, 2);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto v = phi.values[static_cast<std::size_t>(j)] / op.scaling[j];
    x(j, 0) = v.real();
    x(j, 1) = v.imag();
  }
  const Eigen::MatrixXd y = op.matrix * x;
  ComplexGridFunction out(op.grid);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[static_cast<std::size_t>(j)] = op.scaling[j] * std::complex<double>(y(j, 0), y(j, 1));
  }
  return out;
}

/// Max over |t_i| <= T - exclusion of |phi_i - f_i - (C phi)_i|, accumulated
/// in long double with the given tail closure.
inline double residual(const KernelModel& k1, const KernelModel& k2, EquationKind kind,
                       const ComplexGridFunction& phi, const ComplexGridFunction& f, double exclusion = 5.0,
                       TailClosure closure = {}) {
  require_same_grid(phi.grid, f.grid);
  const UniformGrid& g = phi.grid;
  const detail::RowBuilder rows(kind, k1, k2, g, closure);
  std::vector<double> per_row(g.n, 0.0);
  parallel_for(g.n, [&](std::size_t i) {
    if (!g.interior(i, exclusion)) return;
    std::vector<long double> row(g.n);
    rows.row(i, row);
    std::complex<long double> acc(phi.values[i]);
    acc -= std::complex<long double>(f.values[i]);
    for (std::size_t j = 0; j < g.n; ++j) acc -= row[j] * std::complex<long double>(phi.values[j]);
    per_row[i] = static_cast<double>(std::abs(acc));
  });
  return *std::max_element(per_row.begin(), per_row.end());
}

inline double residual(const DiscreteOperator& op, const ComplexGridFunction& phi, const ComplexGridFunction& f,
                       double exclusion = 5.0) {
  require_same_grid(op.grid, phi.grid);
  return residual(op.k1, op.k2, op.kind, phi, f, exclusion, op.closure);
}

// ---------------------------------------------------------------------------
// Rank detection.

struct GapOptions {
  double floor_rel = 1e-8;  // singular values below floor_rel * sigma_max count as zero
  double min_ratio = 10.0;  // smallest acceptable gap ratio
  std::size_t window = 6;   // gaps inspected among the smallest singular values
};

struct GapDecision {
  std::size_t dim = 0;
  double tol_used = 0.0;
  double gap_ratio = 0.0;
  bool indeterminate = true;
};

/// Looks at the window + 1 smallest singular values (clamped to the floor)
/// followed by a virtual value at the floor, and cuts at the largest ratio
/// between neighbours. A largest ratio below min_ratio is indeterminate.
inline GapDecision detect_gap(std::span<const double> sv_desc, const GapOptions& opt = {}) {
  GapDecision out;
  if (sv_desc.empty()) return out;
  const double floor = std::max(opt.floor_rel * sv_desc.front(), std::numeric_limits<double>::min());
  const std::size_t take = std::min(sv_desc.size(), opt.window + 1);
  std::vector<double> tail(sv_desc.end() - static_cast<std::ptrdiff_t>(take), sv_desc.end());
  for (double& s : tail) s = std::max(s, floor);
  tail.push_back(floor);
  std::size_t best = 0;
  double best_ratio = 0.0;
  for (std::size_t k = 0; k + 1 < tail.size(); ++k) {
    const double ratio = tail[k] / tail[k + 1];
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = k;
    }
  }
  out.gap_ratio = best_ratio;
  out.tol_used = std::sqrt(tail[best] * tail[best + 1]);
  out.indeterminate = best_ratio < opt.min_ratio;
  out.dim = static_cast<std::size_t>(std::count_if(sv_desc.begin(), sv_desc.end(),
                                                   [&](double s) { return s < out.tol_used; }));
  return out;
}

enum class GrowthTag { bounded, linear, other };

inline std::string to_string(GrowthTag g) {
  switch (g) {
    case GrowthTag::bounded: return "bounded";
    case GrowthTag::linear: return "linear";
    case GrowthTag::other: return "other";
  }
  return "?";
}

namespace detail {

// Least-squares slope of phi over a <= t <= b.
inline double edge_slope(const RealGridFunction& phi, double a, double b) {
  double s0 = 0, s1 = 0, s2 = 0, y0 = 0, y1 = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double t = phi.grid.t(j);
    if (t < a || t > b) continue;
    s0 += 1;
    s1 += t;
    s2 += t * t;
    y0 += phi.values[j];
    y1 += t * phi.values[j];
  }
  const double det = s0 * s2 - s1 * s1;
  return det > 0 ? (s0 * y1 - s1 * y0) / det : 0.0;
}

}  // namespace detail

struct GrowthFit {
  GrowthTag tag = GrowthTag::other;
  double c0 = 0.0, c1 = 0.0;
  double relative_residual = 0.0;  // rms misfit / rms |phi|
  double edge_growth = 0.0;        // max edge slope * L / max |phi| on the interior
};

/// Bounded when the slopes over L/2 <= |t| <= L (L = T - exclusion) change
/// phi by less than 10% of its interior peak; otherwise linear when |phi|
/// fits c0 + c1 |t| on the interior within 10%, else other.
inline GrowthFit classify_growth(const RealGridFunction& phi, double exclusion) {
  const UniformGrid& g = phi.grid;
  const double L = g.T - exclusion;
  require(L > 0, ErrorCode::boundary_layer, "boundary exclusion leaves no interior");
  double s0 = 0, s1 = 0, s2 = 0, y0 = 0, y1 = 0, yy = 0, peak = 0;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (!g.interior(j, exclusion)) continue;
    const double x = std::abs(g.t(j)), y = std::abs(phi.values[j]);
    s0 += 1;
    s1 += x;
    s2 += x * x;
    y0 += y;
    y1 += x * y;
    yy += y * y;
    peak = std::max(peak, y);
  }
  GrowthFit fit;
  const double det = s0 * s2 - s1 * s1;
  fit.c1 = (s0 * y1 - s1 * y0) / det;
  fit.c0 = (y0 - fit.c1 * s1) / s0;
  double miss = 0;
  for (std::size_t j = 0; j < g.n; ++j) {
    if (!g.interior(j, exclusion)) continue;
    const double e = std::abs(phi.values[j]) - fit.c0 - fit.c1 * std::abs(g.t(j));
    miss += e * e;
  }
  fit.relative_residual = yy > 0 ? std::sqrt(miss / yy) : 0.0;
  const double slope = std::max(std::abs(detail::edge_slope(phi, L / 2, L)),
                                std::abs(detail::edge_slope(phi, -L, -L / 2)));
  fit.edge_growth = peak > 0 ? slope * L / peak : 0.0;
  if (fit.edge_growth < 0.1) fit.tag = GrowthTag::bounded;
  else if (fit.relative_residual < 0.1) fit.tag = GrowthTag::linear;
  return fit;
}

struct NullspaceOptions {
  double boundary_exclusion = 5.0;
  GapOptions gap{};
};

struct NullspaceEstimate {
  std::vector<double> singular_values;  // descending
  double tol_used = 0.0;
  double gap_ratio = 0.0;
  bool indeterminate = true;
  std::size_t dim = 0;
  std::vector<RealGridFunction> weighted_basis;  // orthonormal columns psi
  std::vector<RealGridFunction> basis;           // phi = w^m psi, slowest growth first
  std::vector<GrowthTag> growth_tags;
  std::vector<GrowthFit> growth_fits;

  std::size_t count(GrowthTag tag) const {
    return static_cast<std::size_t>(std::count(growth_tags.begin(), growth_tags.end(), tag));
  }
};

namespace detail {

inline std::vector<double> spectrum(const linalg::Svd& s) {
  return {s.singular_values.data(), s.singular_values.data() + s.singular_values.size()};
}

}  // namespace detail

inline std::vector<double> singular_spectrum(const DiscreteOperator& op) {
  return detail::spectrum(linalg::svd(op.matrix, linalg::SvdJob::values_only));
}

/// Null basis from a dense SVD. The basis is rotated so that combinations
/// with the flattest edges come first: the slopes of phi on both interior
/// edges form a small matrix whose right singular vectors, smallest first,
/// give the rotation.
inline NullspaceEstimate nullspace_estimate(const DiscreteOperator& op, const NullspaceOptions& opt = {}) {
  const linalg::Svd s = linalg::svd(op.matrix, linalg::SvdJob::thin_vectors);
  NullspaceEstimate out;
  out.singular_values = detail::spectrum(s);
  const GapDecision gap = detect_gap(out.singular_values, opt.gap);
  out.tol_used = gap.tol_used;
  out.gap_ratio = gap.gap_ratio;
  out.indeterminate = gap.indeterminate;
  out.dim = gap.dim;
  if (out.dim == 0) return out;

  const Eigen::Index n = op.matrix.cols();
  const Eigen::Index d = static_cast<Eigen::Index>(out.dim);
  Eigen::MatrixXd psi = s.V.rightCols(d);
  const double L = op.grid.T - opt.boundary_exclusion;
  require(L > 0, ErrorCode::boundary_layer, "boundary exclusion leaves no interior");

  Eigen::MatrixXd slopes(2, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    RealGridFunction phi(op.grid);
    for (Eigen::Index j = 0; j < n; ++j) phi.values[static_cast<std::size_t>(j)] = op.scaling[j] * psi(j, k);
    slopes(0, k) = detail::edge_slope(phi, L / 2, L);
    slopes(1, k) = detail::edge_slope(phi, -L, -L / 2);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> small(slopes, Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = small.matrixV().rowwise().reverse();
  psi = psi * rotation;

  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::Index peak = 0;
    psi.col(k).cwiseAbs().maxCoeff(&peak);
    if (psi(peak, k) < 0) psi.col(k) *= -1.0;
    RealGridFunction w(op.grid), phi(op.grid);
    for (Eigen::Index j = 0; j < n; ++j) {
      w.values[static_cast<std::size_t>(j)] = psi(j, k);
      phi.values[static_cast<std::size_t>(j)] = op.scaling[j] * psi(j, k);
    }
    const GrowthFit fit = classify_growth(phi, opt.boundary_exclusion);
    out.weighted_basis.push_back(std::move(w));
    out.basis.push_back(std::move(phi));
    out.growth_tags.push_back(fit.tag);
    out.growth_fits.push_back(fit);
  }
  return out;
}

/// Gap decision for the transposed matrix, computed from its own SVD.
inline GapDecision adjoint_nullspace(const DiscreteOperator& op, const GapOptions& opt = {}) {
  const Eigen::MatrixXd adj = op.matrix.transpose();
  const auto sv = detail::spectrum(linalg::svd(adj, linalg::SvdJob::values_only));
  return detect_gap(sv, opt);
}

// ---------------------------------------------------------------------------
// Inhomogeneous problems.

struct SolveOptions {
  double boundary_exclusion = 5.0;
  GapOptions gap{};
  double unsolved_rel = 1e-3;  // residual above this times ||f||_inf flags the solve
};

struct SolveResult {
  ComplexGridFunction phi;
  double residual = 0.0;
  double f_norm = 0.0;  // max |f| on the interior
  std::size_t rank_deficiency = 0;
  bool indeterminate = false;
  bool solved = false;
};

/// Minimum-norm least-squares solution in weighted coordinates, with the
/// singular values below the gap tolerance dropped.
inline SolveResult solve_inhomogeneous(const DiscreteOperator& op, const ComplexGridFunction& f,
                                       const SolveOptions& opt = {}) {
  require_same_grid(op.grid, f.grid);
  const linalg::Svd s = linalg::svd(op.matrix, linalg::SvdJob::thin_vectors);
  const auto sv = detail::spectrum(s);
  const GapDecision gap = detect_gap(sv, opt.gap);
  const Eigen::Index n = op.matrix.cols();
  Eigen::MatrixXd rhs(n, 2);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto v = f.values[static_cast<std::size_t>(j)] / op.scaling[j];
    rhs(j, 0) = v.real();
    rhs(j, 1) = v.imag();
  }
  Eigen::MatrixXd coeff = s.U.transpose() * rhs;
  for (Eigen::Index k = 0; k < coeff.rows(); ++k) {
    const double sk = s.singular_values[k];
    coeff.row(k) *= (sk < gap.tol_used || sk == 0.0) ? 0.0 : 1.0 / sk;
  }
  const Eigen::MatrixXd psi = s.V * coeff;

  SolveResult out;
  out.phi = ComplexGridFunction(op.grid);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.phi.values[static_cast<std::size_t>(j)] = op.scaling[j] * std::complex<double>(psi(j, 0), psi(j, 1));
  }
  out.rank_deficiency = gap.dim;
  out.indeterminate = gap.indeterminate;
  out.residual = residual(op, out.phi, f, opt.boundary_exclusion);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (op.grid.interior(j, opt.boundary_exclusion)) out.f_norm = std::max(out.f_norm, std::abs(f.values[j]));
  }
  out.solved = out.residual <= opt.unsolved_rel * out.f_norm || out.residual == 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Grid sweeps.

struct SweepPoint {
  double T;
  std::size_t n;
  std::size_t dim = 0;
  double gap_ratio = 0.0;
  bool indeterminate = true;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  bool stable = false;  // every point decisive and all dimensions equal
};

/// Values-only SVD at each (T, n) pair.
inline SweepReport dimension_sweep(const KernelModel& k1, const KernelModel& k2, EquationKind kind,
                                   const std::vector<std::pair<double, std::size_t>>& grid_points,
                                   const AssemblyOptions& assembly = {}, const GapOptions& gap = {}) {
  require(!grid_points.empty(), ErrorCode::invalid_argument, "sweep needs at least one grid");
  SweepReport out;
  for (const auto& [T, n] : grid_points) {
    const auto op = assemble(k1, k2, kind, T, n, assembly);
    const auto sv = singular_spectrum(op);
    const GapDecision d = detect_gap(sv, gap);
    out.points.push_back({T, n, d.dim, d.gap_ratio, d.indeterminate});
  }
  out.stable = std::all_of(out.points.begin(), out.points.end(), [&](const SweepPoint& p) {
    return !p.indeterminate && p.dim == out.points.front().dim;
  });
  return out;
}

/// Cartesian product of Ts and ns.
inline SweepReport dimension_sweep(const KernelModel& k1, const KernelModel& k2, EquationKind kind,
                                   const std::vector<double>& Ts, const std::vector<std::size_t>& ns,
                                   const AssemblyOptions& assembly = {}, const GapOptions& gap = {}) {
  require(Ts.size() >= 2 || ns.size() >= 2, ErrorCode::invalid_argument, "sweep needs two or more grids");
  std::vector<std::pair<double, std::size_t>> pts;
  for (double T : Ts) {
    for (std::size_t n : ns) pts.emplace_back(T, n);
  }
  return dimension_sweep(k1, k2, kind, pts, assembly, gap);
}

// ---------------------------------------------------------------------------
// Theory-facing choices.

/// Tail closure and weight for a predicted solution space. A power m in
/// Lp or C0 admits growth of degree m - 1; in M it admits degree m.
inline AssemblyOptions assembly_for(const Prediction& p) {
  AssemblyOptions opt;
  if (p.equation == EquationKind::paired) {
    opt.weight_power = 0;
    opt.closure = TailClosure::uniform(0);
    return opt;
  }
  const int shift = p.space.kind == SpaceTag::Kind::M ? 0 : -1;
  opt.closure = {p.solution_powers.plus + shift, p.solution_powers.minus + shift};
  opt.weight_power = std::max(p.solution_powers.plus, p.solution_powers.minus);
  return opt;
}

}  // namespace cwh
