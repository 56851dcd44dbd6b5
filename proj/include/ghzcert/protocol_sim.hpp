// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Monte Carlo simulation of the certification protocol: a source emits N
// copies, the verifier holds out N_c of them, the rest are measured in
// randomly chosen game rounds and scored.

#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "ghzcert/bell.hpp"
#include "ghzcert/certify.hpp"
#include "ghzcert/qmat.hpp"
#include "ghzcert/rng.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

struct IidNoisy {
  double alpha = 0.0;
};

/// Noise fraction moves linearly from alpha_start (round 0) to alpha_end (round N-1).
struct Drifting {
  double alpha_start = 0.0;
  double alpha_end = 0.0;
};

/// Rounds come in blocks; each block is independently "bad" with
/// probability bad_fraction.
struct BlockCorrelated {
  double alpha_good = 0.0;
  double alpha_bad = 1.0;
  std::int64_t block_length = 1;
  double bad_fraction = 0.1;
};

struct SourceModel {
  std::variant<IidNoisy, Drifting, BlockCorrelated> variant;

  void validate() const;
  bool is_iid() const { return std::holds_alternative<IidNoisy>(variant); }
  /// Noise fraction of the copy emitted in `round` out of `n`.
  double alpha_at(std::int64_t round, std::int64_t n, std::uint64_t seed) const;
};

struct RoundRecord {
  std::int64_t round_index = 0;
  std::array<int, kParties> input{};
  std::array<int, kParties> outcomes{};
  bool won = false;
  bool held_out = false;
};

struct Transcript {
  std::vector<RoundRecord> rounds;
  std::int64_t n = 0;
  std::int64_t n_win = 0;
  double pass_rate = 0.0;
  std::uint64_t seed = 0;
};

/// Outcome statistics of one strategy on one state: for each of the 16
/// input tuples, the distribution over the 16 outcome tuples.
/// Outcome index bit (3 - p) set means party p observed -1.
class OutcomeTable {
 public:
  OutcomeTable(const DensityMatrix& rho, const LocalSettings& settings);

  double probability(int input_index, int outcome_index) const {
    return p_[input_index][outcome_index];
  }
  /// Mixture (1 - alpha) * this + alpha * uniform.
  OutcomeTable with_white_noise(double alpha) const;

 private:
  OutcomeTable() = default;
  std::array<std::array<double, 16>, 16> p_{};
};

int pack_bits(const std::array<int, kParties>& bits);
std::array<int, kParties> outcome_tuple(int outcome_index);

/// One measured round: draw a term from the game's input distribution,
/// fill uninvolved inputs uniformly, sample the joint outcome, score it.
RoundRecord sample_round(const OutcomeTable& table, const NonlocalGame& game, KeyedRng& rng);
RoundRecord sample_round(const DensityMatrix& state, const NonlocalGame& game,
                         const LocalSettings& settings, KeyedRng& rng);

/// Measures every one of `n` rounds. IID sources may be generated in
/// parallel; the result is identical either way.
std::vector<RoundRecord> simulate_rounds(const SourceModel& source, const NonlocalGame& game,
                                         const LocalSettings& settings, std::int64_t n,
                                         std::uint64_t seed, bool parallel = true);

/// Rolls an N-faced die until `nc` distinct faces appear; sorted indices.
std::vector<std::int64_t> choose_hold_out(std::int64_t n, std::int64_t nc, std::uint64_t seed);

struct ProtocolRun {
  Transcript transcript;
  CertificationQuery query;
  CertificationReport report;
};

ProtocolRun run_protocol(const SourceModel& source, const NonlocalGame& game,
                         const LocalSettings& settings, const SelfTestBound& bound,
                         std::int64_t n, std::int64_t nc, double delta, std::uint64_t seed,
                         bool parallel = true);

}  // namespace ghzcert
