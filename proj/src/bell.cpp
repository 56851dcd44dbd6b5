// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ghzcert {

namespace {

constexpr std::optional<int> kNone = std::nullopt;

BellTerm term(double c, std::optional<int> a, std::optional<int> b, std::optional<int> cc,
              std::optional<int> d) {
  return BellTerm{c, {a, b, cc, d}};
}

double algebraic_bound(const std::vector<BellTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += std::abs(t.coefficient);
  return s;
}

LocalSettings uniform_settings(const ComplexMatrix& in0, const ComplexMatrix& in1) {
  LocalSettings s;
  for (auto& pair : s) pair = {in0, in1};
  return s;
}

}  // namespace

std::string_view operator_name(Operator op) {
  switch (op) {
    case Operator::kMermin: return "mermin";
    case Operator::kBaccari: return "baccari";
    case Operator::kZhao: return "zhao";
  }
  return "unknown";
}

Operator parse_operator(std::string_view name) {
  if (name == "mermin") return Operator::kMermin;
  if (name == "baccari") return Operator::kBaccari;
  if (name == "zhao") return Operator::kZhao;
  throw std::invalid_argument("unknown operator: " + std::string(name));
}

int BellTerm::involved_parties() const {
  return static_cast<int>(std::count_if(settings.begin(), settings.end(),
                                        [](const auto& s) { return s.has_value(); }));
}

BellFunctional mermin_functional() {
  BellFunctional f;
  f.id = Operator::kMermin;
  f.terms = {
      term(+1, 0, 0, 0, 0), term(-1, 1, 1, 0, 0), term(-1, 1, 0, 1, 0), term(-1, 1, 0, 0, 1),
      term(+1, 1, 1, 1, 1), term(-1, 0, 1, 1, 0), term(-1, 0, 1, 0, 1), term(-1, 0, 0, 1, 1),
  };
  f.beta_q = 8.0;
  f.beta_c = 4.0;
  f.beta_alg = algebraic_bound(f.terms);
  f.ideal_settings = uniform_settings(pauli::x(), pauli::y());
  return f;
}

BellFunctional baccari_functional() {
  BellFunctional f;
  f.id = Operator::kBaccari;
  f.terms = {
      term(3, 0, 0, 0, 0),         term(3, 1, 0, 0, 0),
      term(+1, 0, 1, kNone, kNone), term(-1, 1, 1, kNone, kNone),
      term(+1, 0, kNone, 1, kNone), term(-1, 1, kNone, 1, kNone),
      term(+1, 0, kNone, kNone, 1), term(-1, 1, kNone, kNone, 1),
  };
  f.beta_q = 6.0 * std::sqrt(2.0);
  f.beta_c = 6.0;
  f.beta_alg = algebraic_bound(f.terms);
  f.ideal_settings = uniform_settings(pauli::x(), pauli::z());
  f.ideal_settings[0] = {(pauli::x() + pauli::z()) / std::sqrt(2.0),
                         (pauli::x() - pauli::z()) / std::sqrt(2.0)};
  return f;
}

BellFunctional zhao_functional() {
  BellFunctional f;
  f.id = Operator::kZhao;
  // (A0 + A1) B1 C1 D1 + (A0 - A1) B0 + B0 C0 + B0 D0, expanded.
  f.terms = {
      term(+1, 0, 1, 1, 1),             term(+1, 1, 1, 1, 1),
      term(+1, 0, 0, kNone, kNone),     term(-1, 1, 0, kNone, kNone),
      term(+1, kNone, 0, 0, kNone),     term(+1, kNone, 0, kNone, 0),
  };
  f.beta_q = 2.0 * std::sqrt(2.0) + 2.0;
  f.beta_c = 4.0;
  f.beta_alg = algebraic_bound(f.terms);
  // GHZ reaches 2 sqrt(2) + 2 only with Z on input 0 and X on input 1 for B, C, D.
  f.ideal_settings = uniform_settings(pauli::z(), pauli::x());
  f.ideal_settings[0] = {(pauli::x() + pauli::z()) / std::sqrt(2.0),
                         (pauli::x() - pauli::z()) / std::sqrt(2.0)};
  return f;
}

BellFunctional make_functional(Operator op) {
  switch (op) {
    case Operator::kMermin: return mermin_functional();
    case Operator::kBaccari: return baccari_functional();
    case Operator::kZhao: return zhao_functional();
  }
  throw std::invalid_argument("make_functional: unknown operator");
}

void check_dichotomic(const LocalSettings& settings) {
  for (int p = 0; p < kParties; ++p) {
    for (int x = 0; x < 2; ++x) {
      const ComplexMatrix& o = settings[p][x];
      if (o.rows() != 2 || o.cols() != 2 || !is_hermitian(o, 1e-9)) {
        throw std::invalid_argument("observable for party " + std::to_string(p) + " input " +
                                    std::to_string(x) + " is not a 2x2 Hermitian matrix");
      }
      // A dichotomic observable squares to the identity.
      if ((o * o - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("observable for party " + std::to_string(p) + " input " +
                                    std::to_string(x) + " is not dichotomic");
      }
    }
  }
}

HermitianOperator bell_operator(const BellFunctional& f, const LocalSettings& settings) {
  check_dichotomic(settings);
  ComplexMatrix total = ComplexMatrix::Zero(16, 16);
  std::array<ComplexMatrix, kParties> factors;
  for (const auto& t : f.terms) {
    for (int p = 0; p < kParties; ++p) {
      factors[p] = t.settings[p] ? settings[p][*t.settings[p]] : pauli::identity();
    }
    total += t.coefficient * kron_all(factors);
  }
  return HermitianOperator(total);
}

double violation(const DensityMatrix& rho, const BellFunctional& f, const LocalSettings& settings) {
  return expectation(rho, bell_operator(f, settings));
}

double deterministic_value(const BellFunctional& f,
                           const std::array<std::array<int, 2>, kParties>& outcome) {
  double v = 0.0;
  for (const auto& t : f.terms) {
    int prod = 1;
    for (int p = 0; p < kParties; ++p) {
      if (t.settings[p]) prod *= outcome[p][*t.settings[p]];
    }
    v += t.coefficient * prod;
  }
  return v;
}

double classical_bound(const BellFunctional& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned bits = 0; bits < (1u << (2 * kParties)); ++bits) {
    std::array<std::array<int, 2>, kParties> outcome{};
    for (int p = 0; p < kParties; ++p) {
      for (int x = 0; x < 2; ++x) outcome[p][x] = (bits >> (2 * p + x)) & 1u ? -1 : 1;
    }
    best = std::max(best, deterministic_value(f, outcome));
  }
  return best;
}

bool NonlocalGame::wins(std::size_t k, const std::array<int, kParties>& outcomes) const {
  const BellTerm& t = functional.terms.at(k);
  int prod = 1;
  for (int p = 0; p < kParties; ++p) {
    if (t.settings[p]) prod *= outcomes[p];
  }
  return (prod > 0) == (t.coefficient > 0);
}

NonlocalGame to_game(const BellFunctional& f) {
  NonlocalGame g;
  g.functional = f;
  g.input_distribution.reserve(f.terms.size());
  for (const auto& t : f.terms) g.input_distribution.push_back(std::abs(t.coefficient) / f.beta_alg);
  g.p_qm = winning_probability(f.beta_q, f.beta_alg);
  return g;
}

double winning_probability(double beta, double beta_alg) { return 0.5 + beta / (2.0 * beta_alg); }

double pass_probability(const DensityMatrix& rho, const NonlocalGame& game,
                        const LocalSettings& settings) {
  const auto& f = game.functional;
  return winning_probability(violation(rho, f, settings), f.beta_alg);
}

}  // namespace ghzcert
