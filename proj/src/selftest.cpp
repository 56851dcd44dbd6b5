// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ghzcert/certificate_grid.hpp"

namespace ghzcert {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

bool at_quarter_pi(double alpha) { return std::abs(alpha - kQuarterPi) <= 1e-12; }

// Applies rho -> a rho + b G_k rho G_k with G acting on qubit k of four.
ComplexMatrix apply_on_qubit(const ComplexMatrix& rho, int k, const ComplexMatrix& gamma,
                             double g) {
  std::array<ComplexMatrix, kParties> f;
  for (int p = 0; p < kParties; ++p) f[p] = p == k ? gamma : pauli::identity();
  const ComplexMatrix big = kron_all(f);
  return ((1.0 + g) / 2.0) * rho + ((1.0 - g) / 2.0) * (big * rho * big);
}

}  // namespace

JordanPoint uniform_point(double alpha) {
  JordanPoint p;
  p.angles.fill(alpha);
  return p;
}

void check_angle(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kHalfPi + 1e-12)) {
    throw std::invalid_argument("Jordan angle " + std::to_string(alpha) +
                                " outside [0, pi/2]");
  }
}

JordanBasis JordanBasis::xy() { return {pauli::sigma_plus(), pauli::sigma_minus()}; }

GammaBranch default_branch(double alpha) {
  return alpha <= kQuarterPi ? GammaBranch::kPlus : GammaBranch::kMinus;
}

ComplexMatrix jordan_observable(double alpha, int setting, const JordanBasis& basis) {
  check_angle(alpha);
  if (setting != 0 && setting != 1) throw std::invalid_argument("setting must be 0 or 1");
  const double sign = setting == 0 ? 1.0 : -1.0;
  return std::cos(alpha) * basis.plus + sign * std::sin(alpha) * basis.minus;
}

double extraction_strength(double alpha) {
  return (1.0 + std::numbers::sqrt2) * (std::sin(alpha) + std::cos(alpha) - 1.0);
}

ComplexMatrix extraction_channel(double alpha, const ComplexMatrix& rho, const JordanBasis& basis,
                                 GammaBranch branch) {
  check_angle(alpha);
  const double g = extraction_strength(alpha);
  const ComplexMatrix& gamma = branch == GammaBranch::kPlus ? basis.plus : basis.minus;
  return ((1.0 + g) / 2.0) * rho + ((1.0 - g) / 2.0) * (gamma * rho * gamma);
}

ComplexMatrix extraction_channel(double alpha, const ComplexMatrix& rho, const JordanBasis& basis) {
  return extraction_channel(alpha, rho, basis, default_branch(alpha));
}

HermitianOperator build_K(const JordanPoint& point, const JordanBasis& basis,
                          const std::array<GammaBranch, kParties>& branches) {
  const ComplexVector g = ghz_vector(kParties);
  ComplexMatrix k = g * g.adjoint();
  for (int p = 0; p < kParties; ++p) {
    check_angle(point.angles[p]);
    const ComplexMatrix& gamma = branches[p] == GammaBranch::kPlus ? basis.plus : basis.minus;
    k = apply_on_qubit(k, p, gamma, extraction_strength(point.angles[p]));
  }
  return HermitianOperator(k);
}

HermitianOperator build_K(const JordanPoint& point, const JordanBasis& basis) {
  std::array<GammaBranch, kParties> br;
  for (int p = 0; p < kParties; ++p) br[p] = default_branch(point.angles[p]);
  return build_K(point, basis, br);
}

HermitianOperator jordan_bell_operator(const BellFunctional& f, const JordanPoint& point,
                                       const JordanBasis& basis) {
  LocalSettings settings;
  for (int p = 0; p < kParties; ++p) {
    settings[p] = {jordan_observable(point.angles[p], 0, basis),
                   jordan_observable(point.angles[p], 1, basis)};
  }
  return bell_operator(f, settings);
}

double certificate_min_eig(double s, const JordanPoint& point, const BellFunctional& f,
                           const JordanBasis& basis) {
  const double mu = 1.0 - s * f.beta_q;
  const ComplexMatrix b = jordan_bell_operator(f, point, basis).matrix();

  std::vector<int> ambiguous;
  std::array<GammaBranch, kParties> br;
  for (int p = 0; p < kParties; ++p) {
    br[p] = default_branch(point.angles[p]);
    if (at_quarter_pi(point.angles[p])) ambiguous.push_back(p);
  }

  double worst = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << ambiguous.size()); ++mask) {
    for (std::size_t j = 0; j < ambiguous.size(); ++j) {
      br[ambiguous[j]] = (mask >> j) & 1u ? GammaBranch::kMinus : GammaBranch::kPlus;
    }
    const ComplexMatrix m =
        build_K(point, basis, br).matrix() - s * b - mu * ComplexMatrix::Identity(16, 16);
    worst = std::min(worst, min_eigenvalue(HermitianOperator(m)));
  }
  return worst;
}

SelfTestBound slaved_bound(double s, const BellFunctional& f) {
  return SelfTestBound{s, 1.0 - s * f.beta_q, f.beta_q, f.beta_c, f.beta_alg};
}

SelfTestBound published_bound(Operator op) {
  const BellFunctional f = make_functional(op);
  switch (op) {
    case Operator::kMermin: return slaved_bound(0.1875, f);
    case Operator::kBaccari: return slaved_bound(0.4897, f);
    case Operator::kZhao: return slaved_bound(1.0, f);
  }
  throw std::invalid_argument("published_bound: unknown operator");
}

double published_offset(Operator op) {
  switch (op) {
    case Operator::kMermin: return -0.5;
    case Operator::kBaccari: return -3.1552;
    case Operator::kZhao: return -1.0 - 2.0 * std::numbers::sqrt2;
  }
  throw std::invalid_argument("published_offset: unknown operator");
}

double extractability_bound(double beta, const SelfTestBound& bound) {
  if (std::abs(beta) > bound.beta_alg + 1e-12) {
    throw std::invalid_argument("extractability_bound: |beta| exceeds the algebraic bound");
  }
  return bound.s * beta + bound.mu;
}

int grid_divisions(double grid_step) {
  if (!(grid_step > 0.0) || grid_step > kHalfPi) {
    throw std::invalid_argument("grid step must lie in (0, pi/2]");
  }
  const double ratio = kHalfPi / grid_step;
  const long n = std::lround(ratio);
  if (n < 2 || std::abs(ratio - static_cast<double>(n)) > 1e-3 || n % 2 != 0) {
    throw std::invalid_argument("grid step must divide pi/2 into an even number of intervals");
  }
  return static_cast<int>(n);
}

BoundSearchResult bound_search(const BellFunctional& f, const JordanBasis& basis,
                               const BoundSearchOptions& options) {
  const int n = grid_divisions(options.grid_step);
  const double step = kHalfPi / n;
  const CertificateKernel kernel(f, basis);
  const std::vector<JordanPoint> grid =
      angle_grid(n, options.exploit_symmetry && kernel.party_symmetric());

  auto grid_min = [&](double s) {
    return options.parallel ? grid_min_parallel(kernel, grid, s) : grid_min_serial(kernel, grid, s);
  };
  auto feasible = [&](double s) { return grid_min(s).min_eig >= -options.feasibility_slack; };

  double lo = 0.0;
  double hi = 1.0;
  if (!feasible(hi)) {
    throw BoundSearchError("bound search failed: certificate infeasible at s = 1");
  }
  if (feasible(lo)) hi = lo;
  while (hi - lo > options.s_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }

  BoundSearchResult r;
  r.bound = slaved_bound(hi, f);
  r.grid_step = step;
  r.grid_points = grid.size();
  const GridMinimum worst = grid_min(hi);
  r.worst_point = worst.point;
  r.min_eig = worst.min_eig;
  r.refined_worst_point = worst.point;
  r.refined_min_eig = worst.min_eig;

  if (options.refine && options.refine_count > 0) {
    const std::vector<double> values = options.parallel ? grid_values_parallel(kernel, grid, hi)
                                                        : grid_values_serial(kernel, grid, hi);
    std::vector<GridMinimum> ranked(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ranked[i] = {values[i], grid[i]};
    const std::size_t keep = std::min(options.refine_count, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                      ranked.end(), worse_than);
    GridMinimum best = worst;
    for (std::size_t i = 0; i < keep; ++i) {
      const std::vector<JordanPoint> local = local_grid(ranked[i].point, step);
      const GridMinimum m = options.parallel ? grid_min_parallel(kernel, local, hi)
                                             : grid_min_serial(kernel, local, hi);
      if (worse_than(m, best)) best = m;
    }
    r.refined = true;
    r.refined_worst_point = best.point;
    r.refined_min_eig = best.min_eig;
  }
  return r;
}

}  // namespace ghzcert
