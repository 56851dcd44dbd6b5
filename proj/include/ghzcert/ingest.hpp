// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Replay of time-tagged coincidence records.
//
// One JSON object per line:
//   {"window_id": <uint>, "input": [i1,i2,i3,i4], "t_ps": <uint64>, "outcomes": [o1,o2,o3,o4]}
// with i in {0, 1} and o in {-1, 1}. All events of a window share the input.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ghzcert/bell.hpp"
#include "ghzcert/certify.hpp"
#include "ghzcert/protocol_sim.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

struct EventRecord {
  std::uint64_t window_id = 0;
  std::array<int, kParties> input{};
  std::uint64_t t_ps = 0;
  std::array<int, kParties> outcomes{};

  bool operator==(const EventRecord&) const = default;
};

class IngestError : public std::runtime_error {
 public:
  IngestError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates a JSONL event stream. Line numbers are 1-based;
/// blank lines are ignored.
std::vector<EventRecord> parse_events(std::istream& in);

void write_event(std::ostream& out, const EventRecord& e);
void write_events(std::ostream& out, const std::vector<EventRecord>& events);

struct StrictSelection {
  std::vector<EventRecord> rounds;
  std::size_t skipped_windows = 0;
};

/// One uniformly chosen event per window, windows in ascending id order.
StrictSelection strict_select(const std::vector<EventRecord>& events, std::uint64_t seed);

/// Every event becomes a round; the order is a seeded uniform permutation.
std::vector<EventRecord> decomposed(const std::vector<EventRecord>& events, std::uint64_t seed);

struct HoldOut {
  std::size_t certified_index = 0;
  std::vector<EventRecord> verification;
};

/// Removes one round uniformly at random. Throws on empty input.
HoldOut hold_out(const std::vector<EventRecord>& rounds, std::uint64_t seed);

/// Whether a replayed round wins. The input tuple fixes the referee's term
/// whenever it is unique; otherwise the term is drawn from its posterior
/// given the input, which matches the game's joint distribution.
bool score_round(const EventRecord& e, const NonlocalGame& game, std::uint64_t seed,
                 std::uint64_t position);

enum class ReplayMode { kStrict, kDecomposed };
ReplayMode parse_replay_mode(std::string_view name);

struct ReplayResult {
  ReplayMode mode = ReplayMode::kStrict;
  std::size_t windows = 0;
  std::size_t rounds = 0;
  std::size_t certified_index = 0;
  std::int64_t n = 0;
  std::int64_t n_win = 0;
  double pass_rate = 0.0;
  CertificationQuery query;
  CertificationReport report;
};

/// N = number of rounds; P = N_win / (N - 1) over the verification rounds.
ReplayResult replay(const std::vector<EventRecord>& events, ReplayMode mode,
                    const NonlocalGame& game, const SelfTestBound& bound, double delta,
                    std::uint64_t seed);

/// One event per measured round; window_id = round index.
std::vector<EventRecord> events_from_rounds(const std::vector<RoundRecord>& rounds);

/// Windows with `events_per_window` coincidences each, sharing a sampled input.
std::vector<EventRecord> synthesize_events(const SourceModel& source, const NonlocalGame& game,
                                           const LocalSettings& settings, std::int64_t windows,
                                           int events_per_window, std::uint64_t seed);

}  // namespace ghzcert
