// Randomized properties. Every generator is a std::mt19937 with a fixed seed
// so failures reproduce.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "cwh/cwh.hpp"

using namespace cwh;

namespace {

using C = std::complex<double>;

double uniform(std::mt19937& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double log_uniform(std::mt19937& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Conservative two-sided exponential with a random split of the unit mass.
KernelModel random_two_sided(std::mt19937& rng) {
  const double p = log_uniform(rng, 0.3, 4.0), q = log_uniform(rng, 0.3, 4.0);
  const double w = uniform(rng, 0.05, 0.95);  // mass on t > 0
  return KernelModel::two_sided_exp(w * p, p, (1 - w) * q, q);
}

/// Kernel with a prescribed sign of the first moment.
KernelModel random_with_sign(std::mt19937& rng, Sign s) {
  switch (s) {
    case Sign::positive: return KernelModel::one_sided_plus(log_uniform(rng, 0.1, 10.0));
    case Sign::negative: return KernelModel::one_sided_minus(log_uniform(rng, 0.1, 10.0));
    case Sign::zero: {
      const double p = log_uniform(rng, 0.3, 3.0);
      return KernelModel::two_sided_exp(0.5 * p, p, 0.5 * p, p);
    }
  }
  throw Error(ErrorCode::unknown_case, "bad sign");
}

SymbolGrid reduced(const KernelModel& k, Half half, std::size_t n = 2001) {
  const Moments m = moments_of(k);
  return reduce_symbol(build_symbol_grid(ConvolutionOperatorSpec(k), {200.0, n}), zero_order(m), half, m);
}

}  // namespace

TEST(Properties, AnalyticMomentsMatchQuadrature) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const KernelModel k = random_two_sided(rng);
    const Moments exact = moments_analytic(k);
    const NumericMoments num = moments_numeric(k, 60.0, 4001);
    EXPECT_NEAR(exact.nu0, 1.0, 1e-14);
    EXPECT_NEAR(num.moments.nu0, exact.nu0, 1e-6);
    EXPECT_NEAR(num.moments.nu1, exact.nu1, 1e-5 * std::max(1.0, std::abs(exact.nu1)));
    EXPECT_NEAR(num.moments.nu2, exact.nu2, 1e-5 * exact.nu2);
  }
}

TEST(Properties, OneSidedIndexMatchesMomentSign) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const double p = uniform(rng, 0.1, 10.0);
    EXPECT_EQ(winding_number(reduced(KernelModel::one_sided_plus(p), Half::upper)).winding, 0) << "p = " << p;
    EXPECT_EQ(winding_number(reduced(KernelModel::one_sided_minus(p), Half::upper)).winding, -1) << "q = " << p;
  }
}

TEST(Properties, TwoSidedIndexMatchesMomentSign) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const KernelModel k = random_two_sided(rng);
    const Moments m = moments_of(k);
    if (std::abs(m.nu1) < 1e-6) continue;
    const int expected = m.nu1 > 0 ? 0 : -1;
    EXPECT_EQ(winding_number(reduced(k, Half::upper)).winding, expected);
    // The lower reduction multiplies by ((l - i)/(l + i))^order, one turn more.
    EXPECT_EQ(winding_number(reduced(k, Half::lower)).winding, expected + 1);
  }
}

TEST(Properties, SymbolsAreHermitian) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const KernelModel k = random_two_sided(rng);
    EXPECT_LT(hermitian_defect(build_symbol_grid(ConvolutionOperatorSpec(k), {200.0, 501})), 1e-10);
  }
}

TEST(Properties, WindingInvariantUnderRefinement) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const KernelModel k = random_two_sided(rng);
    if (std::abs(moments_of(k).nu1) < 1e-6) continue;
    EXPECT_EQ(winding_number(reduced(k, Half::upper, 501)).winding,
              winding_number(reduced(k, Half::upper, 2001)).winding);
  }
}

TEST(Properties, RelativeIndexIsDifferenceOfWindings) {
  std::mt19937 rng(41);
  const Sign signs[] = {Sign::negative, Sign::zero, Sign::positive};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Sign s1 = signs[pick(rng)], s2 = signs[pick(rng)];
    const KernelModel k1 = random_with_sign(rng, s1), k2 = random_with_sign(rng, s2);
    const SymbolGrid b1 = reduced(k1, Half::upper), b2 = reduced(k2, Half::lower);
    const int kappa = relative_index(b1, b2);
    EXPECT_EQ(kappa, winding_number(b1).winding - winding_number(b2).winding);
    const CaseLabel label = classify_case(moments_of(k1), moments_of(k2));
    EXPECT_EQ(label.pattern, (SignPattern{s1, s2}));
    EXPECT_EQ(kappa, theory_kappa(label));
  }
}

TEST(Properties, PairedEqualsTwoKernelForEqualKernels) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const KernelModel k = random_two_sided(rng);
    const auto a = assemble(k, k, EquationKind::two_kernel, 8.0, 161);
    const auto b = assemble(k, k, EquationKind::paired, 8.0, 161);
    EXPECT_EQ((a.matrix - b.matrix).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Properties, ConstantsSolveEveryPairedEquation) {
  // Each row integrates a single unit-mass kernel against 1 over the whole
  // line (the tail closure supplies the part beyond the grid).
  std::mt19937 rng(47);
  const UniformGrid g(20.0, 401);
  const auto one = ComplexGridFunction::sample(g, [](double) { return 1.0; });
  const auto zero = ComplexGridFunction::sample(g, [](double) { return 0.0; });
  for (int trial = 0; trial < 6; ++trial) {
    const KernelModel k1 = random_two_sided(rng), k2 = random_two_sided(rng);
    EXPECT_LT(residual(k1, k2, EquationKind::paired, one, zero, 0.0), 1e-12);
  }
}

TEST(Properties, LaplaceAffineResidualBound) {
  std::mt19937 rng(53);
  const KernelModel k = KernelModel::laplace();
  const UniformGrid g(20.0, 801);
  const auto zero = ComplexGridFunction::sample(g, [](double) { return 0.0; });
  for (int trial = 0; trial < 5; ++trial) {
    const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
    const auto phi = ComplexGridFunction::sample(g, [&](double t) { return a + b * t; });
    const double bound = (std::abs(a) + std::abs(b)) * 10 * std::exp(-(g.T - 5.0));
    EXPECT_LT(residual(k, k, EquationKind::two_kernel, phi, zero, 5.0), bound);
  }
}

TEST(Properties, SpecialOperatorProbesMatchSymbols) {
  std::mt19937 rng(59);
  ProbeOptions opt;
  opt.T = 30;
  opt.n = 6001;
  for (int trial = 0; trial < 12; ++trial) {
    const SpecialKind kind = trial % 2 == 0 ? SpecialKind::D : SpecialKind::B;
    const double alpha = uniform(rng, -3, 3), lambda = uniform(rng, -8, 8);
    EXPECT_LT(std::abs(operator_symbol_probe(kind, alpha, lambda, opt) - special_symbol(kind, alpha, lambda)), 1e-3)
        << "alpha " << alpha << " lambda " << lambda;
  }
}

TEST(Properties, SpecialOperatorsAreLinear) {
  std::mt19937 rng(61);
  const UniformGrid g(10.0, 201);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexGridFunction x(g), y(g);
    for (std::size_t j = 0; j < g.n; ++j) {
      x.values[j] = C(uniform(rng, -1, 1), uniform(rng, -1, 1));
      y.values[j] = C(uniform(rng, -1, 1), uniform(rng, -1, 1));
    }
    const C s(uniform(rng, -2, 2), uniform(rng, -2, 2));
    const double alpha = uniform(rng, -2, 2);
    ComplexGridFunction z(g);
    for (std::size_t j = 0; j < g.n; ++j) z.values[j] = x.values[j] + s * y.values[j];
    for (SpecialKind kind : {SpecialKind::B, SpecialKind::D}) {
      const auto ax = apply_special(x, kind, alpha), ay = apply_special(y, kind, alpha), az = apply_special(z, kind, alpha);
      for (std::size_t j = 0; j < g.n; ++j) EXPECT_LT(std::abs(az.values[j] - ax.values[j] - s * ay.values[j]), 1e-12);
    }
  }
}

TEST(Properties, PlantedGapsAreFound) {
  std::mt19937 rng(67);
  std::uniform_int_distribution<int> dims(0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = dims(rng);
    std::vector<double> sv;
    for (int k = 0; k < 40; ++k) sv.push_back(log_uniform(rng, 1e-2, 1.0));
    std::sort(sv.rbegin(), sv.rend());
    const double gap = log_uniform(rng, 1e3, 1e6);
    for (int k = 0; k < d; ++k) sv.push_back(sv.back() / gap * uniform(rng, 0.5, 1.0) * std::pow(0.5, k));
    const GapDecision g = detect_gap(sv);
    EXPECT_FALSE(g.indeterminate);
    EXPECT_EQ(g.dim, static_cast<std::size_t>(d));
  }
}

TEST(Properties, GaplessSpectraAreIndeterminate) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    // Ratios below 4 all the way down through the zero floor.
    std::vector<double> sv{1.0};
    while (sv.back() > 1e-12) sv.push_back(sv.back() / uniform(rng, 1.1, 4.0));
    EXPECT_TRUE(detect_gap(sv).indeterminate);
  }
}

TEST(Properties, NullspaceBasisIsOrthonormalInWeightedCoordinates) {
  std::mt19937 rng(73);
  const Sign signs[] = {Sign::negative, Sign::positive};
  for (int trial = 0; trial < 3; ++trial) {
    const KernelModel k1 = random_with_sign(rng, signs[trial % 2]);
    const KernelModel k2 = random_with_sign(rng, Sign::positive);
    const auto op = assemble(k1, k2, EquationKind::two_kernel, 16.0, 321, {1, TailClosure::uniform(0)});
    const auto est = nullspace_estimate(op);
    for (std::size_t a = 0; a < est.dim; ++a) {
      for (std::size_t b = 0; b < est.dim; ++b) {
        double dot = 0;
        for (std::size_t j = 0; j < op.grid.n; ++j) dot += est.weighted_basis[a][j] * est.weighted_basis[b][j];
        EXPECT_NEAR(dot, a == b ? 1.0 : 0.0, 1e-10);
      }
    }
  }
}
