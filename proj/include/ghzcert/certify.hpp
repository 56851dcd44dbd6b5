// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Finite-sample certification: given a pass rate P over the measured copies,
// how much extractability can be claimed for the held-out copy, and with
// what confidence.
//
// With p1 the pass threshold and p2 = p_QM - c eta the pass probability of
// any source whose held-out copy has extractability below 1 - eta,
//
//   delta <= (1 - mu + mu exp(-D(p1 || p2)))^N,
//
// where D is the binary Kullback-Leibler divergence (natural log) and mu is
// the measured fraction of the N copies.

#pragma once

#include <cstdint>

#include "ghzcert/bell.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

/// D(p1 || p2) in nats. Returns +infinity when p2 is 0 or 1 and p1 != p2.
double kl_divergence(double p1, double p2);

/// (1 - mu_meas + mu_meas e^{-D(p1||p2)})^N. Requires p1 > p2.
double confidence_bound(std::int64_t n, double mu_meas, double p1, double p2);
/// Natural log of confidence_bound; stays finite where the bound underflows.
double log_confidence_bound(std::int64_t n, double mu_meas, double p1, double p2);

struct CertificationQuery {
  std::int64_t n = 0;
  double delta = 0.01;
  double pass_rate = 0.0;
  SelfTestBound bound;
  double p_qm = 1.0;
  double mu_meas = 0.0;
};

/// Single-copy query: mu_meas = (N - 1) / N.
CertificationQuery single_copy_query(std::int64_t n, double delta, double pass_rate,
                                     const NonlocalGame& game, const SelfTestBound& bound);

struct CertificationReport {
  double certified_extractability = 0.0;
  double eta = 1.0;
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double achieved_delta = 1.0;
  bool feasible = false;
};

/// Largest 1 - eta with confidence_bound(N, mu, P, p_QM - c eta) <= delta and
/// c eta > p_QM - P. Infeasible queries come back with feasible = false.
CertificationReport max_certified_extractability(const CertificationQuery& q);

/// Smallest N with confidence_bound(N, (N-1)/N, P, p_QM - c eta) <= delta.
std::int64_t min_samples(double delta, double eta, double pass_rate, const NonlocalGame& game,
                         const SelfTestBound& bound);

}  // namespace ghzcert
