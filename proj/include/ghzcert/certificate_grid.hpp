// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Grid kernels for the self-testing certificate. The serial versions are the
// reference; the OpenMP versions must agree with them bit for bit.

#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ghzcert/bell.hpp"
#include "ghzcert/selftest.hpp"

namespace ghzcert {

using Matrix16 = Eigen::Matrix<std::complex<double>, 16, 16>;
using Matrix2 = Eigen::Matrix<std::complex<double>, 2, 2>;

/// Fixed-size evaluator of min eig(K - s B - (1 - s beta_Q) 1).
class CertificateKernel {
 public:
  CertificateKernel(const BellFunctional& f, const JordanBasis& basis);

  double min_eig(double s, const JordanPoint& point) const;

  Matrix16 k_matrix(const JordanPoint& point, const std::array<GammaBranch, kParties>& br) const;
  Matrix16 b_matrix(const JordanPoint& point) const;

  /// True when permuting the parties maps the functional onto itself, so
  /// the certificate only depends on the multiset of angles.
  bool party_symmetric() const { return symmetric_; }

 private:
  struct Term {
    double coefficient;
    std::array<int, kParties> settings;  // -1: party not involved
  };
  std::vector<Term> terms_;
  double beta_q_;
  Matrix2 plus_;
  Matrix2 minus_;
  bool symmetric_;
};

/// All tuples (i_1..i_4) * (pi/2)/divisions; sorted tuples only when
/// `sorted_only`. Index divisions/2 maps to exactly pi/4.
std::vector<JordanPoint> angle_grid(int divisions, bool sorted_only);

/// Local grid of spacing step/4 within +-step of `center`, clipped to [0, pi/2].
std::vector<JordanPoint> local_grid(const JordanPoint& center, double step);

struct GridMinimum {
  double min_eig;
  JordanPoint point;
};

/// Smaller value wins; ties go to the lexicographically smaller point.
bool worse_than(const GridMinimum& a, const GridMinimum& b);

GridMinimum grid_min_serial(const CertificateKernel& kernel, std::span<const JordanPoint> points,
                            double s);
GridMinimum grid_min_parallel(const CertificateKernel& kernel, std::span<const JordanPoint> points,
                              double s);

std::vector<double> grid_values_serial(const CertificateKernel& kernel,
                                       std::span<const JordanPoint> points, double s);
std::vector<double> grid_values_parallel(const CertificateKernel& kernel,
                                         std::span<const JordanPoint> points, double s);

}  // namespace ghzcert
