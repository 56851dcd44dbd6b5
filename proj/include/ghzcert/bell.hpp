// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Four-party Bell functionals and the nonlocal games derived from them.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghzcert/qmat.hpp"

namespace ghzcert {

inline constexpr int kParties = 4;

enum class Operator { kMermin, kBaccari, kZhao };

std::string_view operator_name(Operator op);
/// Throws std::invalid_argument naming the token on an unknown operator.
Operator parse_operator(std::string_view name);

/// One signed correlator. A party with no setting does not take part.
struct BellTerm {
  double coefficient = 0.0;
  std::array<std::optional<int>, kParties> settings{};

  int involved_parties() const;
};

/// Two dichotomic observables (input 0, input 1) for one party.
using ObservablePair = std::array<ComplexMatrix, 2>;
using LocalSettings = std::array<ObservablePair, kParties>;

struct BellFunctional {
  Operator id = Operator::kMermin;
  std::vector<BellTerm> terms;
  double beta_q = 0.0;
  double beta_c = 0.0;
  double beta_alg = 0.0;
  LocalSettings ideal_settings;
};

BellFunctional mermin_functional();
BellFunctional baccari_functional();
BellFunctional zhao_functional();
BellFunctional make_functional(Operator op);

/// Sum_k c_k (x)_p O_{p, x_kp}, identity on uninvolved parties.
HermitianOperator bell_operator(const BellFunctional& f, const LocalSettings& settings);

/// Throws unless every observable is Hermitian with spectrum {-1, +1}.
void check_dichotomic(const LocalSettings& settings);

double violation(const DensityMatrix& rho, const BellFunctional& f, const LocalSettings& settings);

/// Value of the functional for a deterministic strategy; outcome[p][x] in {-1, +1}.
double deterministic_value(const BellFunctional& f,
                           const std::array<std::array<int, 2>, kParties>& outcome);

/// Maximum over all 2^8 deterministic local strategies.
double classical_bound(const BellFunctional& f);

/// The Bell test as a game: the referee draws term k with probability
/// |c_k| / beta_alg, uninvolved parties get a uniform input, and the players
/// win when the product of the involved outcomes equals sign(c_k).
struct NonlocalGame {
  BellFunctional functional;
  std::vector<double> input_distribution;
  double p_qm = 0.0;

  bool wins(std::size_t term, const std::array<int, kParties>& outcomes) const;
};

NonlocalGame to_game(const BellFunctional& f);

/// 1/2 + beta / (2 beta_alg).
double winning_probability(double beta, double beta_alg);

double pass_probability(const DensityMatrix& rho, const NonlocalGame& game,
                        const LocalSettings& settings);

}  // namespace ghzcert
