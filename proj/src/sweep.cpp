// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include "ghzcert/certify.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Context {
  NonlocalGame game;
  SelfTestBound bound;
  double pass_rate;
};

std::optional<double> evaluate(const SweepOptions& o, const Context& ctx, double x) {
  switch (o.panel) {
    case Panel::kLeft: {
      const double p = noisy_pass_rate(ctx.game.functional, x);
      return 1.0 - (ctx.game.p_qm - p) / ctx.bound.c();
    }
    case Panel::kMiddle: {
      const auto n = static_cast<std::int64_t>(x);
      const double p2 = ctx.game.p_qm - ctx.bound.c() * o.eta;
      if (!(ctx.pass_rate > p2)) return 0.0;
      const double mu = static_cast<double>(n - 1) / static_cast<double>(n);
      return 1.0 - confidence_bound(n, mu, ctx.pass_rate, p2);
    }
    case Panel::kRight:
    case Panel::kFig4: {
      const auto n = static_cast<std::int64_t>(x);
      const auto r = max_certified_extractability(
          single_copy_query(n, o.delta, ctx.pass_rate, ctx.game, ctx.bound));
      if (!r.feasible) return std::nullopt;
      return r.certified_extractability;
    }
  }
  return std::nullopt;
}

}  // namespace

Panel parse_panel(std::string_view name) {
  if (name == "left") return Panel::kLeft;
  if (name == "middle") return Panel::kMiddle;
  if (name == "right") return Panel::kRight;
  if (name == "fig4") return Panel::kFig4;
  throw std::invalid_argument("unknown panel: " + std::string(name));
}

double noisy_pass_rate(const BellFunctional& f, double alpha) {
  return winning_probability((1.0 - alpha) * f.beta_q, f.beta_alg);
}

std::vector<std::int64_t> log_n_grid(std::int64_t n_min, std::int64_t n_max, int points) {
  if (n_min < 2 || n_max < n_min || points < 2) {
    throw std::invalid_argument("log_n_grid: need 2 <= n_min <= n_max and points >= 2");
  }
  std::vector<std::int64_t> out;
  const double lo = std::log(static_cast<double>(n_min));
  const double hi = std::log(static_cast<double>(n_max));
  for (int i = 0; i < points; ++i) {
    const double v = std::exp(lo + (hi - lo) * i / (points - 1));
    auto n = static_cast<std::int64_t>(std::llround(v));
    n = std::clamp(n, n_min, n_max);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

std::vector<SweepRow> sweep(const SweepOptions& o) {
  if (o.points < 2) throw std::invalid_argument("sweep: need at least two points");
  std::vector<double> xs;
  if (o.panel == Panel::kLeft) {
    for (int i = 0; i < o.points; ++i) xs.push_back(o.alpha_max * i / (o.points - 1));
  } else {
    for (auto n : log_n_grid(o.n_min, o.n_max, o.points)) xs.push_back(static_cast<double>(n));
  }

  std::vector<SweepRow> rows;
  for (Operator op : o.operators) {
    const BellFunctional f = make_functional(op);
    Context ctx{to_game(f), published_bound(op),
                o.panel == Panel::kFig4 ? o.pass_rate : noisy_pass_rate(f, o.alpha)};

    std::vector<std::optional<double>> values(xs.size());
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
    if (o.parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = evaluate(o, ctx, xs[i]);
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i) values[i] = evaluate(o, ctx, xs[i]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (values[i]) rows.push_back({xs[i], *values[i], op});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "x,value,operator\n";
  for (const auto& r : rows) {
    out << format_number(r.x) << ',' << format_number(r.value) << ',' << operator_name(r.op)
        << '\n';
  }
}

}  // namespace ghzcert
