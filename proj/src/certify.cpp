// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ghzcert {

namespace {

constexpr double kEtaTolerance = 1e-10;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

// a log(a / b) with the 0 log 0 = 0 convention.
double xlogy_ratio(double a, double b) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return a * std::log(a / b);
}

}  // namespace

double kl_divergence(double p1, double p2) {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  if (p1 == p2) return 0.0;
  const double d = xlogy_ratio(p1, p2) + xlogy_ratio(1.0 - p1, 1.0 - p2);
  return std::max(d, 0.0);
}

double log_confidence_bound(std::int64_t n, double mu_meas, double p1, double p2) {
  if (n < 1) throw std::invalid_argument("confidence_bound: N must be positive");
  if (!(mu_meas > 0.0 && mu_meas <= 1.0)) {
    throw std::invalid_argument("confidence_bound: mu_meas must lie in (0, 1]");
  }
  if (!(p1 > p2)) {
    throw std::invalid_argument("confidence_bound: requires p1 > p2 (epsilon2 > epsilon1)");
  }
  const double d = kl_divergence(p1, p2);
  // log1p keeps the base accurate when it is within 1e-7 of one.
  const double log_base = std::log1p(mu_meas * std::expm1(-d));
  return static_cast<double>(n) * log_base;
}

double confidence_bound(std::int64_t n, double mu_meas, double p1, double p2) {
  return std::exp(log_confidence_bound(n, mu_meas, p1, p2));
}

CertificationQuery single_copy_query(std::int64_t n, double delta, double pass_rate,
                                     const NonlocalGame& game, const SelfTestBound& bound) {
  if (n < 2) throw std::invalid_argument("certification needs N >= 2");
  CertificationQuery q;
  q.n = n;
  q.delta = delta;
  q.pass_rate = pass_rate;
  q.bound = bound;
  q.p_qm = game.p_qm;
  q.mu_meas = static_cast<double>(n - 1) / static_cast<double>(n);
  return q;
}

CertificationReport max_certified_extractability(const CertificationQuery& q) {
  if (q.n < 2) throw std::invalid_argument("certification needs N >= 2");
  if (!(q.delta > 0.0 && q.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  check_probability(q.pass_rate, "pass rate");
  if (!(q.mu_meas > 0.0 && q.mu_meas <= 1.0)) {
    throw std::invalid_argument("mu_meas must lie in (0, 1]");
  }

  const double c = q.bound.c();
  CertificationReport r;
  r.epsilon1 = q.p_qm - q.pass_rate;

  auto bound_at = [&](double eta) {
    const double p2 = q.p_qm - c * eta;
    if (p2 <= 0.0) return 0.0;
    return confidence_bound(q.n, q.mu_meas, q.pass_rate, p2);
  };
  auto admissible = [&](double eta) { return c * eta > r.epsilon1 && bound_at(eta) <= q.delta; };

  if (!admissible(1.0)) {
    r.eta = 1.0;
    r.certified_extractability = 0.0;
    r.epsilon2 = c;
    r.achieved_delta = c > r.epsilon1 ? bound_at(1.0) : 1.0;
    r.feasible = false;
    return r;
  }

  // Feasibility is monotone in eta: larger eta widens the KL gap.
  double lo = std::max(0.0, r.epsilon1 / c);
  double hi = 1.0;
  if (admissible(lo)) {
    hi = lo;
  } else {
    while (hi - lo > kEtaTolerance) {
      const double mid = 0.5 * (lo + hi);
      (admissible(mid) ? hi : lo) = mid;
    }
  }
  r.eta = hi;
  r.certified_extractability = 1.0 - hi;
  r.epsilon2 = c * hi;
  r.achieved_delta = bound_at(hi);
  r.feasible = true;
  return r;
}

std::int64_t min_samples(double delta, double eta, double pass_rate, const NonlocalGame& game,
                         const SelfTestBound& bound) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const double p2 = game.p_qm - bound.c() * eta;
  if (!(pass_rate > p2)) {
    throw std::invalid_argument("min_samples: requires epsilon2 > epsilon1");
  }
  auto ok = [&](std::int64_t n) {
    const double mu = static_cast<double>(n - 1) / static_cast<double>(n);
    return confidence_bound(n, mu, pass_rate, p2) <= delta;
  };
  const double d = kl_divergence(pass_rate, p2);
  std::int64_t n = 2;
  if (std::isfinite(d) && d > 0.0) {
    const double estimate = std::ceil(std::log(delta) / -d);
    if (estimate > 4.0e15) throw std::overflow_error("min_samples: N out of range");
    n = std::max<std::int64_t>(2, static_cast<std::int64_t>(estimate) - 2);
  }
  while (n > 2 && ok(n - 1)) --n;
  while (!ok(n)) ++n;
  return n;
}

}  // namespace ghzcert
