// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/ingest.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include <json.hpp>

#include "ghzcert/rng.hpp"

namespace ghzcert {

namespace {

using nlohmann::json;

std::array<int, kParties> read_tuple(const json& j, const char* key, std::size_t line,
                                     bool outcomes) {
  if (!j.is_array() || j.size() != kParties) {
    throw IngestError(line, std::string("field '") + key + "' must be an array of 4 integers");
  }
  std::array<int, kParties> out{};
  for (int p = 0; p < kParties; ++p) {
    const json& v = j[static_cast<std::size_t>(p)];
    if (!v.is_number_integer()) {
      throw IngestError(line, std::string("field '") + key + "' must hold integers");
    }
    const auto x = v.get<std::int64_t>();
    const bool ok = outcomes ? (x == 1 || x == -1) : (x == 0 || x == 1);
    if (!ok) {
      throw IngestError(line, std::string("field '") + key + "' entry " + std::to_string(p) +
                                  (outcomes ? " must be -1 or 1" : " must be 0 or 1"));
    }
    out[p] = static_cast<int>(x);
  }
  return out;
}

std::uint64_t read_uint(const json& obj, const char* key, std::size_t line) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw IngestError(line, std::string("missing field '") + key + "'");
  if (!it->is_number_unsigned()) {
    throw IngestError(line, std::string("field '") + key + "' must be a nonnegative integer");
  }
  return it->get<std::uint64_t>();
}

bool compatible(const BellTerm& t, const std::array<int, kParties>& input) {
  for (int p = 0; p < kParties; ++p) {
    if (t.settings[p] && *t.settings[p] != input[p]) return false;
  }
  return true;
}

}  // namespace

IngestError::IngestError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<EventRecord> parse_events(std::istream& in) {
  struct WindowState {
    std::array<int, kParties> input;
    std::uint64_t last_t;
  };
  std::map<std::uint64_t, WindowState> windows;
  std::vector<EventRecord> events;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw IngestError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw IngestError(line, "expected a JSON object");
    for (const auto& item : obj.items()) {
      const std::string& k = item.key();
      if (k != "window_id" && k != "input" && k != "t_ps" && k != "outcomes") {
        throw IngestError(line, "unknown field '" + k + "'");
      }
    }
    EventRecord e;
    e.window_id = read_uint(obj, "window_id", line);
    if (!obj.contains("input")) throw IngestError(line, "missing field 'input'");
    e.input = read_tuple(obj["input"], "input", line, false);
    e.t_ps = read_uint(obj, "t_ps", line);
    if (!obj.contains("outcomes")) throw IngestError(line, "missing field 'outcomes'");
    e.outcomes = read_tuple(obj["outcomes"], "outcomes", line, true);

    auto [it, fresh] = windows.try_emplace(e.window_id, WindowState{e.input, e.t_ps});
    if (!fresh) {
      if (it->second.input != e.input) {
        throw IngestError(line, "window " + std::to_string(e.window_id) +
                                    " has inconsistent input tuples");
      }
      if (e.t_ps < it->second.last_t) {
        throw IngestError(line, "window " + std::to_string(e.window_id) +
                                    " has decreasing timestamps");
      }
      it->second.last_t = e.t_ps;
    }
    events.push_back(e);
  }
  return events;
}

void write_event(std::ostream& out, const EventRecord& e) {
  nlohmann::ordered_json j;
  j["window_id"] = e.window_id;
  j["input"] = e.input;
  j["t_ps"] = e.t_ps;
  j["outcomes"] = e.outcomes;
  out << j.dump() << '\n';
}

void write_events(std::ostream& out, const std::vector<EventRecord>& events) {
  for (const auto& e : events) write_event(out, e);
}

StrictSelection strict_select(const std::vector<EventRecord>& events, std::uint64_t seed) {
  std::map<std::uint64_t, std::vector<std::size_t>> by_window;
  for (std::size_t i = 0; i < events.size(); ++i) by_window[events[i].window_id].push_back(i);

  StrictSelection sel;
  for (const auto& [id, members] : by_window) {
    if (members.empty()) {
      ++sel.skipped_windows;
      continue;
    }
    KeyedRng rng(seed, id, RngPurpose::kStrictSelect);
    sel.rounds.push_back(events[members[rng.below(members.size())]]);
  }
  return sel;
}

std::vector<EventRecord> decomposed(const std::vector<EventRecord>& events, std::uint64_t seed) {
  std::vector<EventRecord> out = events;
  KeyedRng rng(seed, 0, RngPurpose::kShuffle);
  for (std::size_t i = out.size(); i > 1; --i) {
    std::swap(out[i - 1], out[rng.below(i)]);
  }
  return out;
}

HoldOut hold_out(const std::vector<EventRecord>& rounds, std::uint64_t seed) {
  if (rounds.empty()) throw std::invalid_argument("hold_out: no rounds");
  KeyedRng rng(seed, 0, RngPurpose::kHoldOut);
  HoldOut h;
  h.certified_index = rng.below(rounds.size());
  h.verification.reserve(rounds.size() - 1);
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    if (i != h.certified_index) h.verification.push_back(rounds[i]);
  }
  return h;
}

bool score_round(const EventRecord& e, const NonlocalGame& game, std::uint64_t seed,
                 std::uint64_t position) {
  const auto& terms = game.functional.terms;
  std::vector<std::pair<std::size_t, double>> candidates;
  double total = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!compatible(terms[k], e.input)) continue;
    const int uninvolved = kParties - terms[k].involved_parties();
    const double w = game.input_distribution[k] / static_cast<double>(1 << uninvolved);
    candidates.emplace_back(k, w);
    total += w;
  }
  if (candidates.empty()) {
    throw std::invalid_argument("window " + std::to_string(e.window_id) +
                                ": input tuple is not used by the game");
  }
  std::size_t k = candidates.front().first;
  if (candidates.size() > 1) {
    KeyedRng rng(seed, position, RngPurpose::kTermPosterior);
    double u = rng.uniform() * total;
    for (const auto& [idx, w] : candidates) {
      k = idx;
      if (u < w) break;
      u -= w;
    }
  }
  return game.wins(k, e.outcomes);
}

ReplayMode parse_replay_mode(std::string_view name) {
  if (name == "strict") return ReplayMode::kStrict;
  if (name == "decomposed") return ReplayMode::kDecomposed;
  throw std::invalid_argument("unknown replay mode: " + std::string(name));
}

ReplayResult replay(const std::vector<EventRecord>& events, ReplayMode mode,
                    const NonlocalGame& game, const SelfTestBound& bound, double delta,
                    std::uint64_t seed) {
  ReplayResult r;
  r.mode = mode;
  std::vector<EventRecord> rounds;
  if (mode == ReplayMode::kStrict) {
    StrictSelection sel = strict_select(events, seed);
    r.windows = sel.rounds.size() + sel.skipped_windows;
    rounds = std::move(sel.rounds);
  } else {
    std::map<std::uint64_t, int> ids;
    for (const auto& e : events) ids[e.window_id] = 1;
    r.windows = ids.size();
    rounds = decomposed(events, seed);
  }
  r.rounds = rounds.size();
  r.n = static_cast<std::int64_t>(rounds.size());
  r.query.n = r.n;
  r.query.delta = delta;
  r.query.bound = bound;
  r.query.p_qm = game.p_qm;

  if (rounds.size() < 2) {
    // Nothing left to verify once the certified copy is removed.
    r.report.feasible = false;
    return r;
  }
  const HoldOut h = hold_out(rounds, seed);
  r.certified_index = h.certified_index;
  for (std::size_t i = 0; i < h.verification.size(); ++i) {
    if (score_round(h.verification[i], game, seed, i)) ++r.n_win;
  }
  r.pass_rate = static_cast<double>(r.n_win) / static_cast<double>(h.verification.size());
  r.query.pass_rate = r.pass_rate;
  r.query.mu_meas = static_cast<double>(r.n - 1) / static_cast<double>(r.n);
  r.report = max_certified_extractability(r.query);
  return r;
}

std::vector<EventRecord> events_from_rounds(const std::vector<RoundRecord>& rounds) {
  constexpr std::uint64_t kWindowPs = 15'000'000'000'000ULL;
  std::vector<EventRecord> out;
  for (const auto& r : rounds) {
    if (r.held_out) continue;
    const auto w = static_cast<std::uint64_t>(r.round_index);
    out.push_back(EventRecord{w, r.input, w * kWindowPs, r.outcomes});
  }
  return out;
}

std::vector<EventRecord> synthesize_events(const SourceModel& source, const NonlocalGame& game,
                                           const LocalSettings& settings, std::int64_t windows,
                                           int events_per_window, std::uint64_t seed) {
  constexpr std::uint64_t kWindowPs = 15'000'000'000'000ULL;
  if (events_per_window < 1) throw std::invalid_argument("events_per_window must be >= 1");
  source.validate();
  const OutcomeTable ghz(ghz_state(kParties), settings);
  std::vector<EventRecord> out;
  for (std::int64_t w = 0; w < windows; ++w) {
    const OutcomeTable table = ghz.with_white_noise(source.alpha_at(w, windows, seed));
    KeyedRng rng(seed, static_cast<std::uint64_t>(w), RngPurpose::kSynthesis);
    const RoundRecord first = sample_round(table, game, rng);
    const int x = pack_bits(first.input);
    for (int j = 0; j < events_per_window; ++j) {
      EventRecord e;
      e.window_id = static_cast<std::uint64_t>(w);
      e.input = first.input;
      e.t_ps = static_cast<std::uint64_t>(w) * kWindowPs + static_cast<std::uint64_t>(j) * 1000;
      if (j == 0) {
        e.outcomes = first.outcomes;
      } else {
        double v = rng.uniform();
        int o = 0;
        for (; o < 15; ++o) {
          const double p = table.probability(x, o);
          if (v < p) break;
          v -= p;
        }
        e.outcomes = outcome_tuple(o);
      }
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace ghzcert
