// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ghzcert/certificate_grid.hpp"
#include "test_util.hpp"

namespace ghzcert {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuarter = kPi / 4.0;

JordanPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
  return JordanPoint{{u(rng), u(rng), u(rng), u(rng)}};
}

ComplexMatrix ghz_projector() {
  const ComplexVector g = ghz_vector(4);
  return g * g.adjoint();
}

TEST(JordanObservable, QuarterPiGivesXAndY) {
  const auto basis = JordanBasis::xy();
  EXPECT_TRUE(jordan_observable(kQuarter, 0, basis).isApprox(pauli::x(), 1e-12));
  EXPECT_TRUE(jordan_observable(kQuarter, 1, basis).isApprox(pauli::y(), 1e-12));
}

TEST(JordanObservable, AlwaysDichotomic) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
  for (int t = 0; t < 50; ++t) {
    const double a = u(rng);
    for (int x = 0; x < 2; ++x) {
      const auto ev = testutil::oracle_eigenvalues(jordan_observable(a, x, JordanBasis::xy()));
      EXPECT_NEAR(ev[0], -1.0, 1e-12);
      EXPECT_NEAR(ev[1], 1.0, 1e-12);
    }
  }
}

TEST(JordanObservable, RejectsOutOfRangeAngle) {
  EXPECT_THROW(jordan_observable(-0.01, 0, JordanBasis::xy()), std::invalid_argument);
  EXPECT_THROW(jordan_observable(kPi / 2 + 0.01, 0, JordanBasis::xy()), std::invalid_argument);
  EXPECT_THROW(jordan_observable(0.3, 2, JordanBasis::xy()), std::invalid_argument);
}

TEST(ExtractionChannel, StrengthEndpoints) {
  EXPECT_NEAR(extraction_strength(kQuarter), 1.0, 1e-12);
  EXPECT_NEAR(extraction_strength(0.0), 0.0, 1e-15);
  EXPECT_NEAR(extraction_strength(kPi / 2), 0.0, 1e-15);
}

TEST(ExtractionChannel, IdentityAtQuarterPi) {
  std::mt19937_64 rng(37);
  const auto rho = testutil::random_state(rng, 2).matrix();
  for (auto br : {GammaBranch::kPlus, GammaBranch::kMinus}) {
    EXPECT_TRUE(extraction_channel(kQuarter, rho, JordanBasis::xy(), br).isApprox(rho, 1e-12));
  }
}

TEST(ExtractionChannel, EqualMixtureAtZero) {
  std::mt19937_64 rng(41);
  const auto rho = testutil::random_state(rng, 2).matrix();
  const ComplexMatrix sp = pauli::sigma_plus();
  const ComplexMatrix expected = (rho + sp * rho * sp) / 2.0;
  EXPECT_TRUE(extraction_channel(0.0, rho, JordanBasis::xy()).isApprox(expected, 1e-12));
}

TEST(ExtractionChannel, TraceAndHermiticityPreserved) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, kPi / 2.0);
  for (int t = 0; t < 100; ++t) {
    const auto rho = testutil::random_state(rng, 2).matrix();
    const ComplexMatrix out = extraction_channel(u(rng), rho, JordanBasis::xy());
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(out));
  }
}

TEST(BuildK, QuarterPiIsGhzProjector) {
  const ComplexMatrix k = build_K(uniform_point(kQuarter), JordanBasis::xy()).matrix();
  const ComplexMatrix p = ghz_projector();
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(k(i, j) - p(i, j)), 0.0, 1e-12);
}

TEST(BuildK, UnitTraceAndSpectrumInUnitInterval) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 30; ++t) {
    const ComplexMatrix k = build_K(random_point(rng), JordanBasis::xy()).matrix();
    EXPECT_NEAR(k.trace().real(), 1.0, 1e-12);
    const auto ev = testutil::oracle_eigenvalues(k);
    EXPECT_GE(ev.front(), -1e-10);
    EXPECT_LE(ev.back(), 1.0 + 1e-10);
  }
}

TEST(Certificate, FeasibleAtIdealPointForPublishedSlope) {
  // |GHZ><GHZ| - 0.1875 B + 0.5 1 with B the ideal Mermin operator.
  const auto f = mermin_functional();
  const ComplexMatrix m = ghz_projector() -
                          0.1875 * bell_operator(f, f.ideal_settings).matrix() +
                          0.5 * ComplexMatrix::Identity(16, 16);
  const double oracle = testutil::oracle_eigenvalues(m).front();
  EXPECT_GE(oracle, -1e-12);
  EXPECT_NEAR(certificate_min_eig(0.1875, uniform_point(kQuarter), f, JordanBasis::xy()), oracle,
              1e-10);
}

// At alpha = 0 every observable is sigma_+, so B = -4 sigma_+^(x4) has an
// eight-dimensional +4 eigenspace (sign depends on the parity of the
// Mermin terms). A unit-trace K >= 0 averages at most 1/8 on it, giving
// min eig <= 1/8 + 4s - 1 = 4 (s - 7/32), with equality here.
TEST(Certificate, CornerValueMatchesTraceArgument) {
  const auto f = mermin_functional();
  for (double s : {0.1, 0.1875, 0.2, 0.21875}) {
    EXPECT_NEAR(certificate_min_eig(s, uniform_point(0.0), f, JordanBasis::xy()),
                4.0 * (s - 7.0 / 32.0), 1e-10)
        << "s = " << s;
  }
  const ComplexMatrix b = jordan_bell_operator(f, uniform_point(0.0), JordanBasis::xy()).matrix();
  const auto ev = testutil::oracle_eigenvalues(b);
  EXPECT_EQ(std::count_if(ev.begin(), ev.end(), [](double v) { return std::abs(v - 4) < 1e-9; }),
            8);
}

TEST(Certificate, ZeroSlopeIsNeverPositive) {
  // With s = 0 the certificate is K - 1, and K has spectrum in [0, 1].
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    EXPECT_LE(certificate_min_eig(0.0, random_point(rng), mermin_functional(), JordanBasis::xy()),
              1e-12);
  }
}

TEST(Certificate, InvariantUnderPartyPermutation) {
  std::mt19937_64 rng(59);
  const auto f = mermin_functional();
  for (int t = 0; t < 10; ++t) {
    JordanPoint p = random_point(rng);
    const double base = certificate_min_eig(0.2, p, f, JordanBasis::xy());
    std::sort(p.angles.begin(), p.angles.end());
    do {
      EXPECT_NEAR(certificate_min_eig(0.2, p, f, JordanBasis::xy()), base, 1e-10);
    } while (std::next_permutation(p.angles.begin(), p.angles.end()));
  }
}

TEST(Certificate, BothBranchesEvaluatedAtQuarterPi) {
  const auto f = mermin_functional();
  const auto basis = JordanBasis::xy();
  const JordanPoint p{{kQuarter, 0.3, 1.1, kQuarter}};
  const double s = 0.22;
  const ComplexMatrix b = jordan_bell_operator(f, p, basis).matrix();
  double worst = 1e300;
  for (auto b0 : {GammaBranch::kPlus, GammaBranch::kMinus}) {
    for (auto b3 : {GammaBranch::kPlus, GammaBranch::kMinus}) {
      const std::array<GammaBranch, 4> br{b0, GammaBranch::kPlus, GammaBranch::kMinus, b3};
      const ComplexMatrix m = build_K(p, basis, br).matrix() - s * b -
                              (1.0 - s * f.beta_q) * ComplexMatrix::Identity(16, 16);
      worst = std::min(worst, testutil::oracle_eigenvalues(m).front());
    }
  }
  EXPECT_NEAR(certificate_min_eig(s, p, f, basis), worst, 1e-10);
}

TEST(Kernel, AgreesWithGenericRoute) {
  std::mt19937_64 rng(61);
  const auto f = mermin_functional();
  const CertificateKernel kernel(f, JordanBasis::xy());
  EXPECT_TRUE(kernel.party_symmetric());
  for (int t = 0; t < 50; ++t) {
    const JordanPoint p = random_point(rng);
    EXPECT_NEAR(kernel.min_eig(0.2, p), certificate_min_eig(0.2, p, f, JordanBasis::xy()), 1e-10);
  }
  EXPECT_NEAR(kernel.min_eig(0.1875, uniform_point(0.0)), -0.125, 1e-10);
}

TEST(Kernel, SerialAndParallelAgreeBitwise) {
  const CertificateKernel kernel(mermin_functional(), JordanBasis::xy());
  const auto grid = angle_grid(8, false);
  const auto vs = grid_values_serial(kernel, grid, 0.2);
  const auto vp = grid_values_parallel(kernel, grid, 0.2);
  ASSERT_EQ(vs.size(), vp.size());
  for (std::size_t i = 0; i < vs.size(); ++i) EXPECT_EQ(vs[i], vp[i]);
  const auto ms = grid_min_serial(kernel, grid, 0.2);
  const auto mp = grid_min_parallel(kernel, grid, 0.2);
  EXPECT_EQ(ms.min_eig, mp.min_eig);
  EXPECT_EQ(ms.point, mp.point);
}

TEST(Kernel, FeasibilityMonotoneInSlopeOnRandomSubsamples) {
  const CertificateKernel kernel(mermin_functional(), JordanBasis::xy());
  const auto grid = angle_grid(12, true);
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<JordanPoint> sub;
    std::sample(grid.begin(), grid.end(), std::back_inserter(sub), 40, rng);
    double prev = -1e300;
    for (double s = 0.0; s <= 1.0; s += 0.05) {
      const double v = grid_min_serial(kernel, sub, s).min_eig;
      // Once feasible, always feasible.
      if (prev >= 0.0) EXPECT_GE(v, -1e-12);
      prev = v;
    }
  }
}

TEST(Grid, DivisionsAndQuarterPiNode) {
  EXPECT_EQ(grid_divisions(kPi / 60), 30);
  EXPECT_EQ(grid_divisions(kPi / 120), 60);
  EXPECT_EQ(grid_divisions(kPi / 24), 12);
  EXPECT_EQ(grid_divisions(0.05236), 30);
  EXPECT_THROW(grid_divisions(kPi / 14), std::invalid_argument);
  EXPECT_THROW(grid_divisions(0.1), std::invalid_argument);

  EXPECT_EQ(angle_grid(30, false).size(), 923521u);
  EXPECT_EQ(angle_grid(30, true).size(), 46376u);
  const auto g = angle_grid(6, false);
  EXPECT_TRUE(std::any_of(g.begin(), g.end(), [](const JordanPoint& p) {
    return p.angles == std::array<double, 4>{kQuarter, kQuarter, kQuarter, kQuarter};
  }));
}

TEST(Grid, LocalGridClippedToRange) {
  const auto local = local_grid(uniform_point(0.0), kPi / 60);
  for (const auto& p : local) {
    for (double a : p.angles) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, kPi / 2);
    }
  }
  EXPECT_EQ(local.size(), 5u * 5u * 5u * 5u);
}

TEST(Grid, WorseThanBreaksTiesLexicographically) {
  const GridMinimum a{-1.0, uniform_point(0.1)};
  const GridMinimum b{-1.0, uniform_point(0.2)};
  EXPECT_TRUE(worse_than(a, b));
  EXPECT_FALSE(worse_than(b, a));
  EXPECT_TRUE(worse_than(GridMinimum{-2.0, uniform_point(0.5)}, a));
}

TEST(BoundSearch, CoarseGridMatchesTraceArgument) {
  BoundSearchOptions opt;
  opt.grid_step = kPi / 12;
  opt.refine_count = 5;
  const auto r = bound_search(mermin_functional(), JordanBasis::xy(), opt);
  EXPECT_GE(r.bound.s, 7.0 / 32.0 - 1e-9);
  EXPECT_LE(r.bound.s, 7.0 / 32.0 + opt.s_tolerance);
  EXPECT_NEAR(r.bound.s * 8.0 + r.bound.mu, 1.0, 1e-12);
  EXPECT_GE(r.min_eig, -opt.feasibility_slack);
  EXPECT_EQ(r.grid_points, 210u);
  EXPECT_TRUE(r.refined);
  EXPECT_GT(r.bound.c(), 0.0);
}

TEST(BoundSearch, SymmetryReductionDoesNotChangeResult) {
  BoundSearchOptions opt;
  opt.grid_step = kPi / 12;
  opt.refine = false;
  const auto reduced = bound_search(mermin_functional(), JordanBasis::xy(), opt);
  opt.exploit_symmetry = false;
  const auto full = bound_search(mermin_functional(), JordanBasis::xy(), opt);
  EXPECT_EQ(reduced.bound.s, full.bound.s);
  EXPECT_EQ(reduced.min_eig, full.min_eig);
  EXPECT_EQ(full.grid_points, 7u * 7u * 7u * 7u);
}

TEST(PublishedBound, TableOneConsistency) {
  for (Operator op : {Operator::kMermin, Operator::kBaccari, Operator::kZhao}) {
    const auto b = published_bound(op);
    EXPECT_NEAR(b.s * b.beta_q + published_offset(op), 1.0, 2e-4) << operator_name(op);
    EXPECT_NEAR(b.s * b.beta_q + b.mu, 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(published_bound(Operator::kMermin).s, 0.1875);
  EXPECT_DOUBLE_EQ(published_bound(Operator::kMermin).mu, -0.5);
  EXPECT_NEAR(published_bound(Operator::kMermin).c(), 1.0 / 3.0, 1e-15);
}

TEST(ExtractabilityBound, Examples) {
  const auto b = published_bound(Operator::kMermin);
  EXPECT_NEAR(extractability_bound(8.0, b), 1.0, 1e-12);
  EXPECT_NEAR(extractability_bound((2 * 0.973 - 1) * 8, b), 0.919, 1e-3);
  EXPECT_NEAR(extractability_bound(4.0, b), 0.25, 1e-12);
  EXPECT_THROW(extractability_bound(8.5, b), std::invalid_argument);
  EXPECT_THROW(extractability_bound(-8.5, b), std::invalid_argument);
}

}  // namespace
}  // namespace ghzcert
