// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Robust self-testing bounds of the form  Xi(sigma, GHZ) >= s * beta + mu.
//
// After Jordan's lemma every party measures two qubit observables
//   A_x(alpha) = cos(alpha) sigma_+ + (-1)^x sin(alpha) sigma_-,
// and a bound (s, mu) is certified when the operator
//   K(alpha) - s B(alpha) - mu 1
// is positive semidefinite for every angle tuple, where K is the GHZ
// projector pulled back through one local extraction channel per party.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "ghzcert/bell.hpp"
#include "ghzcert/qmat.hpp"

namespace ghzcert {

/// One Jordan angle per party, each in [0, pi/2].
struct JordanPoint {
  std::array<double, kParties> angles{};

  auto operator<=>(const JordanPoint&) const = default;
};

JordanPoint uniform_point(double alpha);
void check_angle(double alpha);

/// The pair (sigma_+, sigma_-) spanning the Jordan block.
struct JordanBasis {
  ComplexMatrix plus;
  ComplexMatrix minus;

  /// sigma_+- = (X +- Y) / sqrt(2).
  static JordanBasis xy();
};

/// Which conjugation the extraction channel uses: sigma_+ below pi/4,
/// sigma_- above. At exactly pi/4 both are admissible.
enum class GammaBranch { kPlus, kMinus };

GammaBranch default_branch(double alpha);

ComplexMatrix jordan_observable(double alpha, int setting, const JordanBasis& basis);

/// g(alpha) = (1 + sqrt 2)(sin alpha + cos alpha - 1).
double extraction_strength(double alpha);

/// Lambda(rho) = (1+g)/2 rho + (1-g)/2 Gamma rho Gamma on one qubit.
ComplexMatrix extraction_channel(double alpha, const ComplexMatrix& rho, const JordanBasis& basis,
                                 GammaBranch branch);
ComplexMatrix extraction_channel(double alpha, const ComplexMatrix& rho, const JordanBasis& basis);

/// (Lambda_1^dag (x) ... (x) Lambda_4^dag)(|GHZ><GHZ|). Each Lambda is a
/// mixture of identity and a Hermitian-unitary conjugation, so it is self-adjoint.
HermitianOperator build_K(const JordanPoint& point, const JordanBasis& basis,
                          const std::array<GammaBranch, kParties>& branches);
HermitianOperator build_K(const JordanPoint& point, const JordanBasis& basis);

/// B(alpha) with every party measuring jordan_observable(alpha_p, x).
HermitianOperator jordan_bell_operator(const BellFunctional& f, const JordanPoint& point,
                                       const JordanBasis& basis);

/// Minimum eigenvalue of K - s B - (1 - s beta_Q) 1. At angles equal to pi/4
/// every branch combination is evaluated and the smallest value returned.
double certificate_min_eig(double s, const JordanPoint& point, const BellFunctional& f,
                           const JordanBasis& basis);

struct SelfTestBound {
  double s = 0.0;
  double mu = 0.0;
  double beta_q = 0.0;
  double beta_c = 0.0;
  double beta_alg = 0.0;

  /// Robustness constant c~; equal to the slope.
  double c_tilde() const { return s; }
  /// Game constant 1 / (2 c~ beta_alg).
  double c() const { return 1.0 / (2.0 * c_tilde() * beta_alg); }
};

/// Bound with mu slaved to s so that it saturates at beta_Q.
SelfTestBound slaved_bound(double s, const BellFunctional& f);

/// Published slope for each operator (0.4897, 1, 0.1875), mu slaved.
SelfTestBound published_bound(Operator op);

/// Published offset, kept only for the consistency check against mu = 1 - s beta_Q.
double published_offset(Operator op);

/// s * beta + mu, unclamped. Throws if |beta| > beta_alg.
double extractability_bound(double beta, const SelfTestBound& bound);

struct BoundSearchOptions {
  double grid_step = std::numbers::pi / 60.0;
  double s_tolerance = 1e-4;
  double feasibility_slack = 1e-9;
  bool refine = true;
  std::size_t refine_count = 100;
  /// Evaluate only sorted angle tuples when the problem is party-symmetric.
  bool exploit_symmetry = true;
  bool parallel = true;
};

struct BoundSearchResult {
  SelfTestBound bound;
  double grid_step = 0.0;
  std::size_t grid_points = 0;
  JordanPoint worst_point;
  double min_eig = 0.0;
  bool refined = false;
  JordanPoint refined_worst_point;
  double refined_min_eig = 0.0;
};

class BoundSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest s in [0, 1] (bisection to s_tolerance) for which the certificate
/// is >= -feasibility_slack on every grid node. Grid certification is a
/// necessary condition only; the optional refinement reports how far the
/// minimum drops between nodes.
BoundSearchResult bound_search(const BellFunctional& f, const JordanBasis& basis,
                               const BoundSearchOptions& options = {});

/// Number of grid divisions of [0, pi/2]; throws unless step divides pi/2
/// into an even count so that pi/4 is a node.
int grid_divisions(double grid_step);

}  // namespace ghzcert
