// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include <CLI11.hpp>

#include "ghzcert/bell.hpp"
#include "ghzcert/certify.hpp"
#include "ghzcert/ingest.hpp"
#include "ghzcert/json_io.hpp"
#include "ghzcert/protocol_sim.hpp"
#include "ghzcert/selftest.hpp"
#include "ghzcert/sweep.hpp"

namespace ghzcert {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  int threads = 0;

  std::string op = "mermin";
  std::string out;

  // bound
  double grid_step = std::numbers::pi / 60.0;
  double s_tol = 1e-4;
  double slack = 1e-9;
  bool no_refine = false;
  std::size_t refine_count = 100;
  bool published = false;

  // certify / simulate / replay
  std::int64_t n = 0;
  std::int64_t nc = 1;
  double delta = 0.01;
  double pass_rate = 0.0;
  std::uint64_t seed = kDefaultSeed;

  // simulate
  std::string source = "iid";
  double alpha = 0.05;
  double alpha_end = 0.05;
  double alpha_bad = 1.0;
  std::int64_t block_length = 100;
  double bad_fraction = 0.1;
  std::string events_out;

  // sweep
  std::string figure;
  double eta = 0.25;
  int points = 101;
  std::int64_t n_min = 2;
  std::int64_t n_max = 10'000'000;
  double alpha_max = 0.2;

  // replay
  std::string input;
  std::string mode = "strict";
};

const std::vector<std::string> kOperators{"mermin", "baccari", "zhao"};

// Writes to --out when given, otherwise to the default stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file: " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int cmd_bound(const Flags& f, std::ostream& out) {
  const Operator op = parse_operator(f.op);
  Sink sink(f.out, out);
  if (f.published) {
    sink.get() << published_bound_to_json(op).dump() << '\n';
    return kExitOk;
  }
  if (op != Operator::kMermin) {
    throw UsageError("bound search is implemented for the mermin operator; use --published for " +
                     f.op);
  }
  BoundSearchOptions o;
  o.grid_step = f.grid_step;
  o.s_tolerance = f.s_tol;
  o.feasibility_slack = f.slack;
  o.refine = !f.no_refine;
  o.refine_count = f.refine_count;
  try {
    const BoundSearchResult r = bound_search(make_functional(op), JordanBasis::xy(), o);
    sink.get() << bound_to_json(op, r).dump() << '\n';
  } catch (const BoundSearchError& e) {
    OrderedJson j;
    j["operator"] = f.op;
    j["error"] = e.what();
    sink.get() << j.dump() << '\n';
    return kExitInfeasible;
  }
  return kExitOk;
}

int cmd_certify(const Flags& f, std::ostream& out) {
  const Operator op = parse_operator(f.op);
  if (f.n < 2) throw UsageError("--n must be at least 2");
  if (f.nc < 1 || f.nc >= f.n) throw UsageError("--nc must satisfy 1 <= nc < n");
  const NonlocalGame game = to_game(make_functional(op));
  CertificationQuery q = single_copy_query(f.n, f.delta, f.pass_rate, game, published_bound(op));
  q.mu_meas = static_cast<double>(f.n - f.nc) / static_cast<double>(f.n);
  const CertificationReport r = max_certified_extractability(q);
  Sink sink(f.out, out);
  sink.get() << report_to_json(r).dump() << '\n';
  return r.feasible ? kExitOk : kExitInfeasible;
}

SourceModel make_source(const Flags& f) {
  if (f.source == "iid") return {IidNoisy{f.alpha}};
  if (f.source == "drifting") return {Drifting{f.alpha, f.alpha_end}};
  if (f.source == "block") {
    return {BlockCorrelated{f.alpha, f.alpha_bad, f.block_length, f.bad_fraction}};
  }
  throw UsageError("unknown source: " + f.source);
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  const Operator op = parse_operator(f.op);
  if (f.n < 2) throw UsageError("--n must be at least 2");
  if (f.nc < 1 || f.nc >= f.n) throw UsageError("--nc must satisfy 1 <= nc < n");
  const SourceModel source = make_source(f);
  source.validate();
  const BellFunctional fn = make_functional(op);
  const NonlocalGame game = to_game(fn);
  const ProtocolRun run = run_protocol(source, game, fn.ideal_settings, published_bound(op), f.n,
                                       f.nc, f.delta, f.seed);

  {
    Sink sink(f.out, out);
    for (const auto& r : run.transcript.rounds) sink.get() << round_to_json(r).dump() << '\n';
  }
  if (!f.events_out.empty()) {
    std::ofstream ev(f.events_out, std::ios::binary);
    if (!ev) throw UsageError("cannot open events file: " + f.events_out);
    write_events(ev, events_from_rounds(run.transcript.rounds));
  }
  out << protocol_to_json(run, f.nc).dump() << '\n';
  return run.report.feasible ? kExitOk : kExitInfeasible;
}

int cmd_sweep(const Flags& f, std::ostream& out) {
  SweepOptions o;
  o.panel = parse_panel(f.figure);
  if (f.op == "all") {
    o.operators = {Operator::kMermin, Operator::kBaccari, Operator::kZhao};
  } else {
    o.operators = {parse_operator(f.op)};
  }
  o.alpha = f.alpha;
  o.delta = f.delta;
  o.eta = f.eta;
  o.pass_rate = f.pass_rate > 0.0 ? f.pass_rate : 0.973;
  o.points = f.points;
  o.n_min = f.n_min;
  o.n_max = f.n_max;
  o.alpha_max = f.alpha_max;
  const std::vector<SweepRow> rows = sweep(o);
  Sink sink(f.out, out);
  write_csv(sink.get(), rows);
  return kExitOk;
}

int cmd_replay(const Flags& f, std::ostream& out) {
  const Operator op = parse_operator(f.op);
  std::ifstream in(f.input, std::ios::binary);
  if (!in) throw UsageError("cannot open input file: " + f.input);
  const std::vector<EventRecord> events = parse_events(in);
  const NonlocalGame game = to_game(make_functional(op));
  const ReplayResult r =
      replay(events, parse_replay_mode(f.mode), game, published_bound(op), f.delta, f.seed);
  Sink sink(f.out, out);
  sink.get() << replay_to_json(r).dump() << '\n';
  return r.report.feasible ? kExitOk : kExitInfeasible;
}

void add_operator(CLI::App* app, Flags& f, bool allow_all = false) {
  std::vector<std::string> choices = kOperators;
  if (allow_all) choices.push_back("all");
  app->add_option("--operator", f.op, "Bell operator")
      ->check(CLI::IsMember(choices))
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  if (const char* env = std::getenv(kThreadsEnv)) f.threads = std::atoi(env);

  CLI::App app{"Device-independent GHZ certification toolkit", "ghzcert"};
  app.require_subcommand(1);
  app.add_option("--threads", f.threads,
                 std::string("Worker threads (default from ") + kThreadsEnv + ")");

  auto* bound = app.add_subcommand("bound", "Numerical robust self-testing bound search");
  add_operator(bound, f);
  bound->add_option("--grid-step", f.grid_step, "Angle grid step in radians (divides pi/2)")
      ->capture_default_str();
  bound->add_option("--s-tol", f.s_tol, "Bisection tolerance on s")->capture_default_str();
  bound->add_option("--slack", f.slack, "Feasibility slack on the minimum eigenvalue")
      ->capture_default_str();
  bound->add_flag("--no-refine", f.no_refine, "Skip local refinement around the worst nodes");
  bound->add_option("--refine-count", f.refine_count, "Number of worst nodes to refine")
      ->capture_default_str();
  bound->add_flag("--published", f.published, "Emit the published constants instead of searching");
  bound->add_option("--out", f.out, "Output path (default stdout)");

  auto* certify = app.add_subcommand("certify", "Maximum certified extractability");
  certify->add_option("--n", f.n, "Total number of copies N")->required();
  certify->add_option("--delta", f.delta, "Failure probability")->capture_default_str();
  certify->add_option("--pass-rate", f.pass_rate, "Observed pass rate P")->required();
  add_operator(certify, f);
  certify->add_option("--nc", f.nc, "Held-out copies")->capture_default_str();
  certify->add_option("--out", f.out, "Output path (default stdout)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo run of the full protocol");
  simulate->add_option("--source", f.source, "Source model")
      ->check(CLI::IsMember({"iid", "drifting", "block"}))
      ->capture_default_str();
  simulate->add_option("--alpha", f.alpha, "Noise fraction (start / good-block value)")
      ->capture_default_str();
  simulate->add_option("--alpha-end", f.alpha_end, "Final noise fraction (drifting)")
      ->capture_default_str();
  simulate->add_option("--alpha-bad", f.alpha_bad, "Noise fraction in bad blocks")
      ->capture_default_str();
  simulate->add_option("--block-length", f.block_length, "Rounds per block")
      ->capture_default_str();
  simulate->add_option("--bad-fraction", f.bad_fraction, "Probability a block is bad")
      ->capture_default_str();
  simulate->add_option("--n", f.n, "Total number of copies N")->required();
  simulate->add_option("--nc", f.nc, "Held-out copies")->capture_default_str();
  add_operator(simulate, f);
  simulate->add_option("--delta", f.delta, "Failure probability")->capture_default_str();
  simulate->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--out", f.out, "Transcript JSONL path (default stdout)");
  simulate->add_option("--events-out", f.events_out, "Also write measured rounds as event JSONL");

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep as CSV");
  sweep_cmd->add_option("--figure", f.figure, "Panel: left, middle, right or fig4")
      ->required()
      ->check(CLI::IsMember({"left", "middle", "right", "fig4"}));
  add_operator(sweep_cmd, f, true);
  sweep_cmd->add_option("--alpha", f.alpha, "Noise fraction")->capture_default_str();
  sweep_cmd->add_option("--delta", f.delta, "Failure probability")->capture_default_str();
  sweep_cmd->add_option("--eta", f.eta, "Target infidelity")->capture_default_str();
  sweep_cmd->add_option("--pass-rate", f.pass_rate, "Fixed pass rate (fig4, default 0.973)");
  sweep_cmd->add_option("--points", f.points, "Grid points")->capture_default_str();
  sweep_cmd->add_option("--n-min", f.n_min, "Smallest N")->capture_default_str();
  sweep_cmd->add_option("--n-max", f.n_max, "Largest N")->capture_default_str();
  sweep_cmd->add_option("--alpha-max", f.alpha_max, "Largest alpha (left panel)")
      ->capture_default_str();
  sweep_cmd->add_option("--out", f.out, "CSV path (default stdout)");

  auto* replay_cmd = app.add_subcommand("replay", "Replay an event JSONL file");
  replay_cmd->add_option("--input", f.input, "Event JSONL path")->required();
  replay_cmd->add_option("--mode", f.mode, "strict or decomposed")
      ->check(CLI::IsMember({"strict", "decomposed"}))
      ->capture_default_str();
  add_operator(replay_cmd, f);
  replay_cmd->add_option("--delta", f.delta, "Failure probability")->capture_default_str();
  replay_cmd->add_option("--seed", f.seed, "RNG seed")->capture_default_str();
  replay_cmd->add_option("--out", f.out, "Output path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests surface here too.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (f.threads > 0) omp_set_num_threads(f.threads);

  try {
    if (bound->parsed()) return cmd_bound(f, out);
    if (certify->parsed()) return cmd_certify(f, out);
    if (simulate->parsed()) return cmd_simulate(f, out);
    if (sweep_cmd->parsed()) return cmd_sweep(f, out);
    if (replay_cmd->parsed()) return cmd_replay(f, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IngestError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

}  // namespace ghzcert
