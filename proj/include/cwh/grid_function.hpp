#pragma once

// Uniform odd grids on [-T, T] and sampled functions on them.

#include <cmath>
#include <complex>
#include <cstddef>
#include <ostream>
#include <vector>

#include "cwh/error.hpp"

namespace cwh {

struct UniformGrid {
  double T = 40.0;
  std::size_t n = 2001;  // odd, so t = 0 is the node with index center()

  UniformGrid() = default;
  UniformGrid(double half_width, std::size_t count) : T(half_width), n(count) {
    require(T > 0, ErrorCode::invalid_argument, "grid half-width T must be positive");
    require(n >= 3 && n % 2 == 1, ErrorCode::invalid_argument, "grid node count must be odd and >= 3");
  }

  std::size_t center() const noexcept { return n / 2; }
  double h() const noexcept { return T / static_cast<double>(center()); }
  double t(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(center())) * h();
  }
  std::vector<double> nodes() const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = t(j);
    return out;
  }
  /// Nodes with |t| <= T - exclusion.
  bool interior(std::size_t j, double exclusion) const noexcept {
    return std::abs(t(j)) <= T - exclusion + 1e-12 * T;
  }

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

template <class Scalar = std::complex<double>>
struct GridFunction {
  UniformGrid grid;
  std::vector<Scalar> values;

  GridFunction() = default;
  explicit GridFunction(UniformGrid g) : grid(g), values(g.n, Scalar{}) {}
  GridFunction(UniformGrid g, std::vector<Scalar> v) : grid(g), values(std::move(v)) {
    require(values.size() == grid.n, ErrorCode::grid_mismatch, "value count differs from grid size");
  }

  template <class F>
  static GridFunction sample(UniformGrid g, F&& f) {
    GridFunction out(g);
    for (std::size_t j = 0; j < g.n; ++j) out.values[j] = static_cast<Scalar>(f(g.t(j)));
    return out;
  }

  std::size_t size() const noexcept { return values.size(); }
  Scalar& operator[](std::size_t j) { return values[j]; }
  const Scalar& operator[](std::size_t j) const { return values[j]; }
};

using ComplexGridFunction = GridFunction<std::complex<double>>;
using RealGridFunction = GridFunction<double>;

inline void require_same_grid(const UniformGrid& a, const UniformGrid& b) {
  require(a == b, ErrorCode::grid_mismatch, "grid functions live on different grids");
}

/// CSV columns t, re, im.
template <class Scalar>
void write_csv(std::ostream& os, const GridFunction<Scalar>& f) {
  os.precision(17);
  os << "t,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    const std::complex<double> v(f.values[j]);
    os << f.grid.t(j) << ',' << v.real() << ',' << v.imag() << '\n';
  }
}

}  // namespace cwh
