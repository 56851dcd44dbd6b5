// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/json_io.hpp"

#include <string>

namespace ghzcert {

OrderedJson functional_to_json(const BellFunctional& f) {
  OrderedJson j;
  j["operator"] = std::string(operator_name(f.id));
  OrderedJson terms = OrderedJson::array();
  for (const auto& t : f.terms) {
    OrderedJson settings = OrderedJson::array();
    for (const auto& s : t.settings) {
      if (s) {
        settings.push_back(*s);
      } else {
        settings.push_back(nullptr);
      }
    }
    terms.push_back({{"coefficient", t.coefficient}, {"settings", settings}});
  }
  j["terms"] = terms;
  j["beta_q"] = f.beta_q;
  j["beta_c"] = f.beta_c;
  j["beta_alg"] = f.beta_alg;
  return j;
}

OrderedJson point_to_json(const JordanPoint& p) {
  OrderedJson a = OrderedJson::array();
  for (double v : p.angles) a.push_back(v);
  return a;
}

OrderedJson bound_to_json(Operator op, const BoundSearchResult& r) {
  OrderedJson j;
  j["operator"] = std::string(operator_name(op));
  j["s"] = r.bound.s;
  j["mu"] = r.bound.mu;
  j["c"] = r.bound.c();
  j["grid_step"] = r.grid_step;
  j["worst_point"] = point_to_json(r.worst_point);
  j["min_eig"] = r.min_eig;
  j["refined"] = r.refined;
  if (r.refined) {
    j["refined_worst_point"] = point_to_json(r.refined_worst_point);
    j["refined_min_eig"] = r.refined_min_eig;
  }
  j["grid_points"] = r.grid_points;
  return j;
}

OrderedJson published_bound_to_json(Operator op) {
  const SelfTestBound b = published_bound(op);
  OrderedJson j;
  j["operator"] = std::string(operator_name(op));
  j["s"] = b.s;
  j["mu"] = b.mu;
  j["c"] = b.c();
  j["beta_q"] = b.beta_q;
  j["beta_c"] = b.beta_c;
  j["beta_alg"] = b.beta_alg;
  j["published"] = true;
  return j;
}

OrderedJson report_to_json(const CertificationReport& r) {
  OrderedJson j;
  j["certified_extractability"] = r.certified_extractability;
  j["eta"] = r.eta;
  j["epsilon1"] = r.epsilon1;
  j["epsilon2"] = r.epsilon2;
  j["achieved_delta"] = r.achieved_delta;
  j["feasible"] = r.feasible;
  return j;
}

OrderedJson round_to_json(const RoundRecord& r) {
  OrderedJson j;
  j["round_index"] = r.round_index;
  if (r.held_out) {
    j["input"] = nullptr;
    j["outcomes"] = nullptr;
  } else {
    j["input"] = r.input;
    j["outcomes"] = r.outcomes;
  }
  j["won"] = r.won;
  j["held_out"] = r.held_out;
  return j;
}

OrderedJson protocol_to_json(const ProtocolRun& run, std::int64_t nc) {
  OrderedJson j;
  j["n"] = run.transcript.n;
  j["nc"] = nc;
  j["n_win"] = run.transcript.n_win;
  j["pass_rate"] = run.transcript.pass_rate;
  j["seed"] = run.transcript.seed;
  j["report"] = report_to_json(run.report);
  return j;
}

OrderedJson replay_to_json(const ReplayResult& r) {
  OrderedJson j;
  j["mode"] = r.mode == ReplayMode::kStrict ? "strict" : "decomposed";
  j["windows"] = r.windows;
  j["rounds"] = r.rounds;
  j["certified_index"] = r.certified_index;
  j["n"] = r.n;
  j["n_win"] = r.n_win;
  j["pass_rate"] = r.pass_rate;
  j["report"] = report_to_json(r.report);
  return j;
}

}  // namespace ghzcert
