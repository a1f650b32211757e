#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cwh/symbol_engine.hpp"

using namespace cwh;

namespace {

const Complex I{0.0, 1.0};

// Grid whose values come from an arbitrary closed form.
template <class F>
SymbolGrid grid_of(F&& f, std::size_t n = 2001, double Lambda = 200.0) {
  SymbolGrid g;
  g.lambdas = arctan_nodes(Lambda, n);
  for (double l : g.lambdas) g.values.push_back(f(l));
  g.tail_limit = 1.0;
  return g;
}

SymbolGrid reduced(const KernelModel& k, Half half, const SymbolGridOptions& opt = {}) {
  const Moments m = moments_of(k);
  return reduce_symbol(build_symbol_grid(ConvolutionOperatorSpec(k), opt), zero_order(m), half, m);
}

}  // namespace

TEST(SymbolEngine, ClosedFormValues) {
  EXPECT_NEAR(std::abs(symbol_eval(ConvolutionOperatorSpec(KernelModel::laplace()), 1.0) - 0.5), 0.0, 1e-15);
  const Complex v = symbol_eval(ConvolutionOperatorSpec(KernelModel::one_sided_plus(1.0)), 1.0);
  EXPECT_NEAR(v.real(), 0.5, 1e-15);
  EXPECT_NEAR(v.imag(), -0.5, 1e-15);
  for (const auto& k : {KernelModel::laplace(), KernelModel::one_sided_minus(3.0),
                        KernelModel::two_sided_exp(0.25, 0.5, 0.5, 1.0)}) {
    EXPECT_EQ(std::abs(symbol_eval(ConvolutionOperatorSpec(k), 0.0)), 0.0);
  }
}

TEST(SymbolEngine, GeneralConstantUsesTransform) {
  const ConvolutionOperatorSpec op(KernelModel::laplace(), Complex{2.0, 0.0});
  EXPECT_NEAR(std::abs(symbol_eval(op, 1.0) - 1.5), 0.0, 1e-15);
  EXPECT_THROW(ConvolutionOperatorSpec(KernelModel::laplace(), Complex{0.0, 0.0}), Error);
}

TEST(SymbolEngine, SampledKernelFlagsQuadrature) {
  const auto k = KernelModel::sampled({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  const auto sv = symbol_eval_detailed(ConvolutionOperatorSpec(k), 0.5);
  EXPECT_TRUE(sv.via_quadrature);
  // Triangle transform (sin(l/2)/(l/2))^2.
  const double s = std::sin(0.25) / 0.25;
  EXPECT_NEAR(sv.value.real(), 1.0 - s * s, 1e-13);
}

TEST(SymbolEngine, GridShapeAndTail) {
  const SymbolGrid g = build_symbol_grid(ConvolutionOperatorSpec(KernelModel::laplace()));
  EXPECT_EQ(g.size(), 2001u);
  EXPECT_EQ(g.values[g.zero_index()], Complex(0.0, 0.0));
  EXPECT_EQ(g.lambdas.front(), -200.0);
  EXPECT_EQ(g.lambdas.back(), 200.0);
  EXPECT_LT(std::abs(g.values.back() - 1.0), 1e-4);
  EXPECT_LT(hermitian_defect(g), 1e-10);
  const SymbolGrid plus = build_symbol_grid(ConvolutionOperatorSpec(KernelModel::one_sided_plus(1.0)));
  EXPECT_LT(hermitian_defect(plus), 1e-10);
}

TEST(SymbolEngine, CoarseGridNeedsNoRefinement) {
  const SymbolGrid g = build_symbol_grid(ConvolutionOperatorSpec(KernelModel::laplace()), {200.0, 64});
  EXPECT_EQ(g.size(), 65u);
  EXPECT_THROW(build_symbol_grid(ConvolutionOperatorSpec(KernelModel::laplace()), {200.0, 32}), Error);
}

TEST(SymbolEngine, ZeroOrder) {
  EXPECT_EQ(zero_order({1, 1, 2}).order, 1);
  EXPECT_EQ(zero_order({1, 0, 2}).order, 2);
  EXPECT_THROW(zero_order({0.5, 0, 2}), Error);
  try {
    zero_order({1, 0, 0, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unsupported_moment);
  }
}

TEST(SymbolEngine, ReducedValuesAtZero) {
  const SymbolGrid b = reduced(KernelModel::one_sided_plus(2.0), Half::upper);
  EXPECT_NEAR(std::abs(b.values[b.zero_index()] - 0.5), 0.0, 1e-12);
  // b(lambda) = (lambda + i)/(lambda + 2i)
  for (std::size_t k = 0; k < b.size(); k += 97) {
    const double l = b.lambdas[k];
    EXPECT_NEAR(std::abs(b.values[k] - (l + I) / (l + 2.0 * I)), 0.0, 1e-12);
  }
  const SymbolGrid lap = reduced(KernelModel::laplace(), Half::upper);
  EXPECT_NEAR(std::abs(lap.values[lap.zero_index()] + 1.0), 0.0, 1e-12);
  for (std::size_t k = 0; k < lap.size(); k += 97) {
    const double l = lap.lambdas[k];
    EXPECT_NEAR(std::abs(lap.values[k] - (l + I) / (l - I)), 0.0, 1e-12);
  }
  const SymbolGrid minus = reduced(KernelModel::one_sided_minus(1.0), Half::lower);
  EXPECT_NEAR(std::abs(minus.values[minus.zero_index()] - 1.0), 0.0, 1e-12);
}

TEST(SymbolEngine, ReductionThrowsWhenSymbolHasAnotherZero) {
  SymbolGrid g;
  g.lambdas = {-2.0, -1.0, 0.0, 1.0, 2.0};
  for (double l : g.lambdas) g.values.push_back(Complex(l * (l - 1.0), 0.0));
  try {
    reduce_symbol(g, {1}, Half::upper, {1, 1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::vanishing_symbol);
  }
}

TEST(SymbolEngine, WindingOfReferenceSymbols) {
  EXPECT_EQ(winding_number(grid_of([](double l) { return (l + I) / (l - I); })).winding, -1);
  EXPECT_EQ(winding_number(grid_of([](double l) { return (l + I) / (l + 3.0 * I); })).winding, 0);
  EXPECT_EQ(winding_number(grid_of([](double) { return Complex(1.0, 0.0); })).winding, 0);
  EXPECT_EQ(winding_number(grid_of([](double l) { return std::pow((l - I) / (l + I), 2); })).winding, 2);
}

TEST(SymbolEngine, WindingFailsOnVanishingSymbol) {
  try {
    winding_number(grid_of([](double l) { return Complex(l, 0.0); }));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::vanishing_symbol);
  }
}

TEST(SymbolEngine, WindingFailsOnUnresolvedJumps) {
  // Phase e^{-i 50 lambda} over a coarse grid jumps by more than pi/2.
  auto g = grid_of([](double l) { return std::exp(Complex(0.0, -50.0 * l)); }, 65, 10.0);
  EXPECT_THROW(winding_number(g), Error);
}

TEST(SymbolEngine, RelativeIndexDisplay) {
  const auto b1 = reduced(KernelModel::one_sided_minus(1.0), Half::upper);
  const auto b2 = reduced(KernelModel::one_sided_plus(1.0), Half::lower);
  EXPECT_EQ(relative_index(b1, b2), -2);
  const auto c1 = reduced(KernelModel::one_sided_plus(1.0), Half::upper);
  const auto c2 = reduced(KernelModel::one_sided_minus(1.0), Half::lower);
  EXPECT_EQ(relative_index(c1, c2), 0);
  EXPECT_EQ(relative_index(b1, b1), 0);
  const auto other = reduced(KernelModel::laplace(), Half::upper, {200.0, 1001});
  EXPECT_THROW(relative_index(b1, other), Error);
}

TEST(SymbolEngine, CsvHeader) {
  std::ostringstream os;
  write_csv(os, build_symbol_grid(ConvolutionOperatorSpec(KernelModel::laplace()), {200.0, 64}));
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "lambda,re,im,unwrapped_phase");
}
