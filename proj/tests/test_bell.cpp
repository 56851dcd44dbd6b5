// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/bell.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ghzcert/protocol_sim.hpp"
#include "test_util.hpp"

namespace ghzcert {
namespace {

const double kSqrt2 = std::sqrt(2.0);

std::vector<BellFunctional> all_functionals() {
  return {mermin_functional(), baccari_functional(), zhao_functional()};
}

LocalSettings random_settings(std::mt19937_64& rng) {
  LocalSettings s;
  for (auto& pair : s) pair = {testutil::random_dichotomic(rng), testutil::random_dichotomic(rng)};
  return s;
}

TEST(Functional, ConstructorsMatchTableOne) {
  const auto m = mermin_functional();
  EXPECT_EQ(m.terms.size(), 8u);
  EXPECT_DOUBLE_EQ(m.beta_q, 8.0);
  EXPECT_DOUBLE_EQ(m.beta_c, 4.0);
  EXPECT_DOUBLE_EQ(m.beta_alg, 8.0);

  const auto b = baccari_functional();
  EXPECT_EQ(b.terms.size(), 8u);
  EXPECT_NEAR(b.beta_q, 6.0 * kSqrt2, 1e-12);
  EXPECT_DOUBLE_EQ(b.beta_c, 6.0);
  EXPECT_DOUBLE_EQ(b.beta_alg, 12.0);

  const auto z = zhao_functional();
  EXPECT_EQ(z.terms.size(), 6u);
  EXPECT_NEAR(z.beta_q, 2.0 * kSqrt2 + 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(z.beta_c, 4.0);
  EXPECT_DOUBLE_EQ(z.beta_alg, 6.0);
}

TEST(Functional, BaccariTermShapes) {
  int four_party = 0, two_party = 0;
  for (const auto& t : baccari_functional().terms) {
    if (t.involved_parties() == 4) {
      ++four_party;
      EXPECT_DOUBLE_EQ(std::abs(t.coefficient), 3.0);
    } else if (t.involved_parties() == 2) {
      ++two_party;
      EXPECT_DOUBLE_EQ(std::abs(t.coefficient), 1.0);
    }
  }
  EXPECT_EQ(four_party, 2);
  EXPECT_EQ(two_party, 6);
}

TEST(Functional, AlgebraicBoundIsSumOfAbsCoefficients) {
  for (const auto& f : all_functionals()) {
    double sum = 0.0;
    for (const auto& t : f.terms) {
      EXPECT_NE(t.coefficient, 0.0);
      EXPECT_GE(t.involved_parties(), 1);
      sum += std::abs(t.coefficient);
    }
    EXPECT_EQ(sum, f.beta_alg);
    EXPECT_LE(f.beta_c, f.beta_q);
    EXPECT_LE(f.beta_q, f.beta_alg);
  }
}

TEST(Violation, IdealSettingsReachQuantumBound) {
  const auto ghz = ghz_state(4);
  EXPECT_NEAR(violation(ghz, mermin_functional(), mermin_functional().ideal_settings), 8.0, 1e-9);
  EXPECT_NEAR(violation(ghz, baccari_functional(), baccari_functional().ideal_settings),
              6.0 * kSqrt2, 1e-9);
  EXPECT_NEAR(violation(ghz, zhao_functional(), zhao_functional().ideal_settings),
              2.0 * kSqrt2 + 2.0, 1e-9);
}

TEST(Violation, MaximallyMixedGivesZero) {
  const auto mixed = DensityMatrix::maximally_mixed(4);
  for (const auto& f : all_functionals()) {
    EXPECT_NEAR(violation(mixed, f, f.ideal_settings), 0.0, 1e-12);
  }
}

TEST(Violation, WhiteNoiseScalesLinearly) {
  const auto f = mermin_functional();
  EXPECT_NEAR(violation(noisy_ghz(0.05), f, f.ideal_settings), 7.6, 1e-9);
  for (double a : {0.0, 0.1, 0.37, 1.0}) {
    EXPECT_NEAR(violation(noisy_ghz(a), f, f.ideal_settings), 8.0 * (1.0 - a), 1e-9);
  }
}

TEST(Violation, BoundedByAlgebraicMaximum) {
  std::mt19937_64 rng(23);
  for (const auto& f : all_functionals()) {
    for (int t = 0; t < 100; ++t) {
      const double v = violation(testutil::random_state(rng, 16), f, random_settings(rng));
      EXPECT_LE(std::abs(v), f.beta_alg + 1e-9);
    }
  }
}

TEST(Violation, RejectsNonDichotomicObservable) {
  const auto f = mermin_functional();
  LocalSettings s = f.ideal_settings;
  s[2][1] = 0.5 * pauli::z();
  EXPECT_THROW(violation(ghz_state(4), f, s), std::invalid_argument);
  s[2][1] = pauli::z() + pauli::identity();
  EXPECT_THROW(bell_operator(f, s), std::invalid_argument);
}

TEST(Violation, MerminMinEigenvalueIsMinusAlgebraic) {
  const auto f = mermin_functional();
  const auto ev = testutil::oracle_eigenvalues(bell_operator(f, f.ideal_settings).matrix());
  EXPECT_NEAR(ev.front(), -8.0, 1e-9);
  EXPECT_NEAR(ev.back(), 8.0, 1e-9);
}

// Classical value oracle: a deterministic strategy is the product state
// |0000> measured with settings (+-1) * identity. That route goes through
// bell_operator, not through deterministic_value.
double classical_oracle(const BellFunctional& f) {
  double best = -1e300;
  const auto zero = DensityMatrix::pure([] {
    ComplexVector v = ComplexVector::Zero(16);
    v(0) = 1.0;
    return v;
  }());
  for (int mask = 0; mask < 256; ++mask) {
    LocalSettings s;
    for (int p = 0; p < kParties; ++p) {
      for (int x = 0; x < 2; ++x) {
        const double sign = ((mask >> (2 * p + x)) & 1) ? -1.0 : 1.0;
        s[p][x] = sign * pauli::identity();
      }
    }
    best = std::max(best, violation(zero, f, s));
  }
  return best;
}

TEST(ClassicalBound, ExhaustiveEnumerationMatchesTableOne) {
  EXPECT_EQ(classical_bound(mermin_functional()), 4.0);
  EXPECT_EQ(classical_bound(baccari_functional()), 6.0);
  EXPECT_EQ(classical_bound(zhao_functional()), 4.0);
}

TEST(ClassicalBound, AgreesWithOperatorOracle) {
  for (const auto& f : all_functionals()) {
    EXPECT_NEAR(classical_bound(f), classical_oracle(f), 1e-12);
    EXPECT_NEAR(classical_oracle(f), f.beta_c, 1e-12);
  }
}

TEST(ClassicalBound, DeterministicValueOfAllPlusIsCoefficientSum) {
  std::array<std::array<int, 2>, kParties> ones{};
  for (auto& o : ones) o = {1, 1};
  for (const auto& f : all_functionals()) {
    double sum = 0.0;
    for (const auto& t : f.terms) sum += t.coefficient;
    EXPECT_DOUBLE_EQ(deterministic_value(f, ones), sum);
  }
}

TEST(Game, PQmValues) {
  EXPECT_NEAR(to_game(mermin_functional()).p_qm, 1.0, 1e-12);
  EXPECT_NEAR(to_game(baccari_functional()).p_qm, 0.5 + kSqrt2 / 4.0, 1e-12);
  EXPECT_NEAR(to_game(baccari_functional()).p_qm, 0.85355, 1e-5);
  EXPECT_NEAR(to_game(zhao_functional()).p_qm, 0.5 + (2 * kSqrt2 + 2) / 12.0, 1e-12);
  EXPECT_NEAR(to_game(zhao_functional()).p_qm, 0.90237, 1e-5);
  EXPECT_DOUBLE_EQ(winning_probability(0.0, 8.0), 0.5);
}

TEST(Game, InputDistributionProportionalToCoefficients) {
  for (const auto& f : all_functionals()) {
    const auto g = to_game(f);
    ASSERT_EQ(g.input_distribution.size(), f.terms.size());
    EXPECT_NEAR(std::accumulate(g.input_distribution.begin(), g.input_distribution.end(), 0.0),
                1.0, 1e-12);
    for (std::size_t k = 0; k < f.terms.size(); ++k) {
      EXPECT_NEAR(g.input_distribution[k], std::abs(f.terms[k].coefficient) / f.beta_alg, 1e-15);
    }
  }
}

TEST(Game, WinPredicateIsSignedParity) {
  const auto g = to_game(mermin_functional());
  for (std::size_t k = 0; k < g.functional.terms.size(); ++k) {
    const bool positive = g.functional.terms[k].coefficient > 0;
    EXPECT_EQ(g.wins(k, {1, 1, 1, 1}), positive);
    EXPECT_EQ(g.wins(k, {-1, 1, 1, 1}), !positive);
    EXPECT_EQ(g.wins(k, {-1, -1, 1, 1}), positive);
  }
}

TEST(PassProbability, ExamplesAndRange) {
  const auto g = to_game(mermin_functional());
  const auto& s = g.functional.ideal_settings;
  EXPECT_NEAR(pass_probability(ghz_state(4), g, s), 1.0, 1e-12);
  EXPECT_NEAR(pass_probability(noisy_ghz(0.05), g, s), 0.975, 1e-12);
  for (const auto& f : all_functionals()) {
    EXPECT_NEAR(pass_probability(DensityMatrix::maximally_mixed(4), to_game(f), f.ideal_settings),
                0.5, 1e-12);
  }
}

// Exact round-win probability from the Born-rule outcome table, summed over
// the game's joint input distribution.
double exact_win_probability(const DensityMatrix& rho, const NonlocalGame& g,
                             const LocalSettings& s) {
  const OutcomeTable table(rho, s);
  double total = 0.0;
  for (std::size_t k = 0; k < g.functional.terms.size(); ++k) {
    const auto& term = g.functional.terms[k];
    const int free = kParties - term.involved_parties();
    for (int fill = 0; fill < (1 << free); ++fill) {
      std::array<int, kParties> in{};
      int bit = 0;
      for (int p = 0; p < kParties; ++p) {
        in[p] = term.settings[p] ? *term.settings[p] : ((fill >> bit++) & 1);
      }
      const int x = pack_bits(in);
      for (int o = 0; o < 16; ++o) {
        if (g.wins(k, outcome_tuple(o))) {
          total += g.input_distribution[k] / (1 << free) * table.probability(x, o);
        }
      }
    }
  }
  return total;
}

TEST(PassProbability, EqualsExactRoundWinProbability) {
  std::mt19937_64 rng(29);
  for (const auto& f : all_functionals()) {
    const auto g = to_game(f);
    for (int t = 0; t < 10; ++t) {
      const auto rho = testutil::random_state(rng, 16);
      const auto s = random_settings(rng);
      const double p = pass_probability(rho, g, s);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
      EXPECT_NEAR(p, exact_win_probability(rho, g, s), 1e-9);
    }
  }
}

TEST(Operator, ParseAndName) {
  EXPECT_EQ(parse_operator("mermin"), Operator::kMermin);
  EXPECT_EQ(parse_operator("baccari"), Operator::kBaccari);
  EXPECT_EQ(parse_operator("zhao"), Operator::kZhao);
  EXPECT_EQ(operator_name(Operator::kZhao), "zhao");
  try {
    parse_operator("svetlichny");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("svetlichny"), std::string::npos);
  }
}

}  // namespace
}  // namespace ghzcert
