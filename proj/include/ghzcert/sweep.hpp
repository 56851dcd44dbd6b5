// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Parameter sweeps over the certification formulas, one CSV row per grid point.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ghzcert/bell.hpp"

namespace ghzcert {

enum class Panel {
  kLeft,    // 1 - eta vs alpha, N -> infinity with epsilon1 = epsilon2
  kMiddle,  // 1 - delta vs N at fixed eta and alpha
  kRight,   // 1 - eta vs N at fixed delta and alpha
  kFig4,    // 1 - eta vs N at a fixed observed pass rate
};

Panel parse_panel(std::string_view name);

struct SweepOptions {
  Panel panel = Panel::kLeft;
  std::vector<Operator> operators{Operator::kMermin};
  double alpha = 0.05;
  double delta = 0.01;
  double eta = 0.25;
  double pass_rate = 0.973;
  double alpha_max = 0.2;
  std::int64_t n_min = 2;
  std::int64_t n_max = 10'000'000;
  int points = 101;
  bool parallel = true;
};

struct SweepRow {
  double x;
  double value;
  Operator op;
};

/// Pass probability of noisy_ghz(alpha) under the ideal strategy:
/// 1/2 + (1 - alpha) beta_Q / (2 beta_alg).
double noisy_pass_rate(const BellFunctional& f, double alpha);

/// Integer N values, log-spaced between n_min and n_max, deduplicated.
std::vector<std::int64_t> log_n_grid(std::int64_t n_min, std::int64_t n_max, int points);

/// Rows are ordered by operator (in the given order) and then by x.
/// Infeasible points of the right and fig4 panels produce no row.
std::vector<SweepRow> sweep(const SweepOptions& options);

/// Header "x,value,operator", '.' decimals, '\n' line endings.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace ghzcert
