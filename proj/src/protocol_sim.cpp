// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/protocol_sim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace ghzcert {

namespace {

void check_alpha(double a, const char* what) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

int bit_of(int index, int party) { return (index >> (kParties - 1 - party)) & 1; }

RoundRecord measure(std::int64_t r, const SourceModel& source, const OutcomeTable& ghz_table,
                    const NonlocalGame& game, std::int64_t n, std::uint64_t seed) {
  KeyedRng rng(seed, static_cast<std::uint64_t>(r), RngPurpose::kRound);
  const double alpha = source.alpha_at(r, n, seed);
  RoundRecord rec = sample_round(ghz_table.with_white_noise(alpha), game, rng);
  rec.round_index = r;
  return rec;
}

}  // namespace

void SourceModel::validate() const {
  if (const auto* s = std::get_if<IidNoisy>(&variant)) {
    check_alpha(s->alpha, "alpha");
  } else if (const auto* d = std::get_if<Drifting>(&variant)) {
    check_alpha(d->alpha_start, "alpha_start");
    check_alpha(d->alpha_end, "alpha_end");
  } else if (const auto* b = std::get_if<BlockCorrelated>(&variant)) {
    check_alpha(b->alpha_good, "alpha_good");
    check_alpha(b->alpha_bad, "alpha_bad");
    check_alpha(b->bad_fraction, "bad_fraction");
    if (b->block_length < 1) throw std::invalid_argument("block_length must be >= 1");
  }
}

double SourceModel::alpha_at(std::int64_t round, std::int64_t n, std::uint64_t seed) const {
  if (const auto* s = std::get_if<IidNoisy>(&variant)) return s->alpha;
  if (const auto* d = std::get_if<Drifting>(&variant)) {
    if (n <= 1) return d->alpha_start;
    const double t = static_cast<double>(round) / static_cast<double>(n - 1);
    return d->alpha_start + (d->alpha_end - d->alpha_start) * t;
  }
  const auto& b = std::get<BlockCorrelated>(variant);
  const auto block = static_cast<std::uint64_t>(round / b.block_length);
  KeyedRng rng(seed, block, RngPurpose::kBlock);
  return rng.uniform() < b.bad_fraction ? b.alpha_bad : b.alpha_good;
}

OutcomeTable::OutcomeTable(const DensityMatrix& rho, const LocalSettings& settings) {
  check_dichotomic(settings);
  if (rho.dim() != 16) throw std::invalid_argument("OutcomeTable: expected a four-qubit state");
  const ComplexMatrix id = pauli::identity();
  for (int x = 0; x < 16; ++x) {
    for (int o = 0; o < 16; ++o) {
      std::array<ComplexMatrix, kParties> proj;
      for (int p = 0; p < kParties; ++p) {
        const double sign = bit_of(o, p) ? -1.0 : 1.0;
        proj[p] = (id + sign * settings[p][bit_of(x, p)]) / 2.0;
      }
      const double v = (rho.matrix() * kron_all(proj)).trace().real();
      p_[x][o] = std::max(v, 0.0);
    }
  }
}

OutcomeTable OutcomeTable::with_white_noise(double alpha) const {
  OutcomeTable t;
  for (int x = 0; x < 16; ++x) {
    for (int o = 0; o < 16; ++o) t.p_[x][o] = (1.0 - alpha) * p_[x][o] + alpha / 16.0;
  }
  return t;
}

int pack_bits(const std::array<int, kParties>& bits) {
  int v = 0;
  for (int p = 0; p < kParties; ++p) v = (v << 1) | (bits[p] & 1);
  return v;
}

std::array<int, kParties> outcome_tuple(int outcome_index) {
  std::array<int, kParties> o{};
  for (int p = 0; p < kParties; ++p) o[p] = bit_of(outcome_index, p) ? -1 : 1;
  return o;
}

RoundRecord sample_round(const OutcomeTable& table, const NonlocalGame& game, KeyedRng& rng) {
  const auto& dist = game.input_distribution;
  double u = rng.uniform();
  std::size_t k = 0;
  for (; k + 1 < dist.size(); ++k) {
    if (u < dist[k]) break;
    u -= dist[k];
  }
  const BellTerm& term = game.functional.terms[k];

  RoundRecord rec;
  for (int p = 0; p < kParties; ++p) {
    rec.input[p] = term.settings[p] ? *term.settings[p] : static_cast<int>(rng.below(2));
  }
  const int x = pack_bits(rec.input);

  double v = rng.uniform();
  int o = 0;
  for (; o < 15; ++o) {
    const double p = table.probability(x, o);
    if (v < p) break;
    v -= p;
  }
  rec.outcomes = outcome_tuple(o);
  rec.won = game.wins(k, rec.outcomes);
  return rec;
}

RoundRecord sample_round(const DensityMatrix& state, const NonlocalGame& game,
                         const LocalSettings& settings, KeyedRng& rng) {
  return sample_round(OutcomeTable(state, settings), game, rng);
}

std::vector<RoundRecord> simulate_rounds(const SourceModel& source, const NonlocalGame& game,
                                         const LocalSettings& settings, std::int64_t n,
                                         std::uint64_t seed, bool parallel) {
  source.validate();
  if (n < 0) throw std::invalid_argument("simulate_rounds: negative round count");
  const OutcomeTable table = OutcomeTable(ghz_state(kParties), settings);
  std::vector<RoundRecord> rounds(static_cast<std::size_t>(n));
  if (parallel && source.is_iid()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) rounds[r] = measure(r, source, table, game, n, seed);
  } else {
    for (std::int64_t r = 0; r < n; ++r) rounds[r] = measure(r, source, table, game, n, seed);
  }
  return rounds;
}

std::vector<std::int64_t> choose_hold_out(std::int64_t n, std::int64_t nc, std::uint64_t seed) {
  if (nc < 1 || nc >= n) throw std::invalid_argument("hold-out needs 1 <= N_c < N");
  KeyedRng rng(seed, 0, RngPurpose::kHoldOut);
  std::set<std::int64_t> chosen;
  while (static_cast<std::int64_t>(chosen.size()) < nc) {
    chosen.insert(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))));
  }
  return {chosen.begin(), chosen.end()};
}

ProtocolRun run_protocol(const SourceModel& source, const NonlocalGame& game,
                         const LocalSettings& settings, const SelfTestBound& bound,
                         std::int64_t n, std::int64_t nc, double delta, std::uint64_t seed,
                         bool parallel) {
  source.validate();
  const std::vector<std::int64_t> held = choose_hold_out(n, nc, seed);
  const OutcomeTable table = OutcomeTable(ghz_state(kParties), settings);

  ProtocolRun run;
  Transcript& t = run.transcript;
  t.n = n;
  t.seed = seed;
  t.rounds.resize(static_cast<std::size_t>(n));
  auto is_held = [&](std::int64_t r) { return std::binary_search(held.begin(), held.end(), r); };
  auto fill = [&](std::int64_t r) {
    if (is_held(r)) {
      RoundRecord rec;
      rec.round_index = r;
      rec.held_out = true;
      t.rounds[r] = rec;
    } else {
      t.rounds[r] = measure(r, source, table, game, n, seed);
    }
  };
  if (parallel && source.is_iid()) {
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < n; ++r) fill(r);
  } else {
    for (std::int64_t r = 0; r < n; ++r) fill(r);
  }

  t.n_win = std::count_if(t.rounds.begin(), t.rounds.end(),
                          [](const RoundRecord& r) { return !r.held_out && r.won; });
  const std::int64_t measured = n - nc;
  t.pass_rate = static_cast<double>(t.n_win) / static_cast<double>(measured);

  CertificationQuery& q = run.query;
  q.n = n;
  q.delta = delta;
  q.pass_rate = t.pass_rate;
  q.bound = bound;
  q.p_qm = game.p_qm;
  q.mu_meas = static_cast<double>(measured) / static_cast<double>(n);
  run.report = max_certified_extractability(q);
  return run;
}

}  // namespace ghzcert
