// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/certificate_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace ghzcert {

namespace {

using Vector16 = Eigen::Matrix<std::complex<double>, 16, 1>;

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

inline int bit_of(int index, int party) { return (index >> (kParties - 1 - party)) & 1; }

Matrix2 to_fixed(const ComplexMatrix& m) {
  Matrix2 out;
  out << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return out;
}

Vector16 apply_single(const Vector16& v, int party, const Matrix2& op) {
  Vector16 out;
  const int mask = 1 << (kParties - 1 - party);
  for (int i = 0; i < 16; ++i) {
    const int b = bit_of(i, party);
    const int i0 = i & ~mask;
    const int i1 = i | mask;
    out(i) = op(b, 0) * v(i0) + op(b, 1) * v(i1);
  }
  return out;
}

double node_angle(int index, int divisions) {
  if (2 * index == divisions) return kQuarterPi;
  if (index == divisions) return kHalfPi;
  return kHalfPi * static_cast<double>(index) / static_cast<double>(divisions);
}

bool is_permutation_invariant(const BellFunctional& f) {
  auto key = [](const BellTerm& t, const std::array<int, kParties>& perm) {
    std::array<int, kParties + 1> k{};
    for (int p = 0; p < kParties; ++p) k[p] = t.settings[perm[p]] ? *t.settings[perm[p]] : -1;
    k[kParties] = static_cast<int>(std::lround(t.coefficient * 1e6));
    return k;
  };
  std::array<int, kParties> identity{0, 1, 2, 3};
  std::vector<std::array<int, kParties + 1>> base;
  for (const auto& t : f.terms) base.push_back(key(t, identity));
  std::sort(base.begin(), base.end());

  std::array<int, kParties> perm = identity;
  while (std::next_permutation(perm.begin(), perm.end())) {
    std::vector<std::array<int, kParties + 1>> permuted;
    for (const auto& t : f.terms) permuted.push_back(key(t, perm));
    std::sort(permuted.begin(), permuted.end());
    if (permuted != base) return false;
  }
  return true;
}

}  // namespace

CertificateKernel::CertificateKernel(const BellFunctional& f, const JordanBasis& basis)
    : beta_q_(f.beta_q),
      plus_(to_fixed(basis.plus)),
      minus_(to_fixed(basis.minus)),
      symmetric_(is_permutation_invariant(f)) {
  for (const auto& t : f.terms) {
    Term term{t.coefficient, {}};
    for (int p = 0; p < kParties; ++p) term.settings[p] = t.settings[p] ? *t.settings[p] : -1;
    terms_.push_back(term);
  }
}

Matrix16 CertificateKernel::k_matrix(const JordanPoint& point,
                                     const std::array<GammaBranch, kParties>& br) const {
  std::array<Vector16, 16> vecs;
  std::array<double, 16> weights;
  vecs[0].setZero();
  vecs[0](0) = vecs[0](15) = 1.0 / std::numbers::sqrt2;
  weights[0] = 1.0;
  int count = 1;
  for (int p = 0; p < kParties; ++p) {
    const double g = extraction_strength(point.angles[p]);
    const Matrix2& gamma = br[p] == GammaBranch::kPlus ? plus_ : minus_;
    for (int j = 0; j < count; ++j) {
      vecs[count + j] = apply_single(vecs[j], p, gamma);
      weights[count + j] = weights[j] * (1.0 - g) / 2.0;
      weights[j] *= (1.0 + g) / 2.0;
    }
    count *= 2;
  }
  Matrix16 k = Matrix16::Zero();
  for (int j = 0; j < count; ++j) k.noalias() += weights[j] * (vecs[j] * vecs[j].adjoint());
  return k;
}

Matrix16 CertificateKernel::b_matrix(const JordanPoint& point) const {
  std::array<std::array<Matrix2, 2>, kParties> obs;
  for (int p = 0; p < kParties; ++p) {
    const double c = std::cos(point.angles[p]);
    const double s = std::sin(point.angles[p]);
    obs[p][0] = c * plus_ + s * minus_;
    obs[p][1] = c * plus_ - s * minus_;
  }
  const Matrix2 id = Matrix2::Identity();
  Matrix16 b = Matrix16::Zero();
  for (const auto& t : terms_) {
    std::array<const Matrix2*, kParties> f;
    for (int p = 0; p < kParties; ++p) f[p] = t.settings[p] < 0 ? &id : &obs[p][t.settings[p]];
    for (int i = 0; i < 16; ++i) {
      for (int j = 0; j < 16; ++j) {
        std::complex<double> v = t.coefficient;
        for (int p = 0; p < kParties; ++p) v *= (*f[p])(bit_of(i, p), bit_of(j, p));
        b(i, j) += v;
      }
    }
  }
  return b;
}

double CertificateKernel::min_eig(double s, const JordanPoint& point) const {
  const double mu = 1.0 - s * beta_q_;
  const Matrix16 base = -s * b_matrix(point) - mu * Matrix16::Identity();

  std::array<int, kParties> ambiguous{};
  int n_amb = 0;
  std::array<GammaBranch, kParties> br;
  for (int p = 0; p < kParties; ++p) {
    br[p] = default_branch(point.angles[p]);
    if (std::abs(point.angles[p] - kQuarterPi) <= 1e-12) ambiguous[n_amb++] = p;
  }

  Eigen::SelfAdjointEigenSolver<Matrix16> solver;
  double worst = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n_amb); ++mask) {
    for (int j = 0; j < n_amb; ++j) {
      br[ambiguous[j]] = (mask >> j) & 1u ? GammaBranch::kMinus : GammaBranch::kPlus;
    }
    Matrix16 m = k_matrix(point, br) + base;
    m = (0.5 * (m + m.adjoint())).eval();
    solver.compute(m, Eigen::EigenvaluesOnly);
    worst = std::min(worst, solver.eigenvalues()(0));
  }
  return worst;
}

std::vector<JordanPoint> angle_grid(int divisions, bool sorted_only) {
  std::vector<JordanPoint> pts;
  const int m = divisions + 1;
  for (int a = 0; a < m; ++a) {
    for (int b = sorted_only ? a : 0; b < m; ++b) {
      for (int c = sorted_only ? b : 0; c < m; ++c) {
        for (int d = sorted_only ? c : 0; d < m; ++d) {
          pts.push_back(JordanPoint{{node_angle(a, divisions), node_angle(b, divisions),
                                     node_angle(c, divisions), node_angle(d, divisions)}});
        }
      }
    }
  }
  return pts;
}

std::vector<JordanPoint> local_grid(const JordanPoint& center, double step) {
  std::array<std::vector<double>, kParties> axes;
  for (int p = 0; p < kParties; ++p) {
    for (int k = -4; k <= 4; ++k) {
      const double a = center.angles[p] + k * step / 4.0;
      if (a >= 0.0 && a <= kHalfPi) axes[p].push_back(a);
    }
  }
  std::vector<JordanPoint> pts;
  for (double a : axes[0])
    for (double b : axes[1])
      for (double c : axes[2])
        for (double d : axes[3]) pts.push_back(JordanPoint{{a, b, c, d}});
  return pts;
}

bool worse_than(const GridMinimum& a, const GridMinimum& b) {
  if (a.min_eig != b.min_eig) return a.min_eig < b.min_eig;
  return a.point < b.point;
}

GridMinimum grid_min_serial(const CertificateKernel& kernel, std::span<const JordanPoint> points,
                            double s) {
  GridMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (const auto& p : points) {
    const GridMinimum cur{kernel.min_eig(s, p), p};
    if (worse_than(cur, best)) best = cur;
  }
  return best;
}

std::vector<double> grid_values_serial(const CertificateKernel& kernel,
                                       std::span<const JordanPoint> points, double s) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = kernel.min_eig(s, points[i]);
  return out;
}

std::vector<double> grid_values_parallel(const CertificateKernel& kernel,
                                         std::span<const JordanPoint> points, double s) {
  std::vector<double> out(points.size());
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = kernel.min_eig(s, points[i]);
  return out;
}

GridMinimum grid_min_parallel(const CertificateKernel& kernel, std::span<const JordanPoint> points,
                              double s) {
  // Values are reduced serially so the winner never depends on thread count.
  const std::vector<double> values = grid_values_parallel(kernel, points, s);
  GridMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GridMinimum cur{values[i], points[i]};
    if (worse_than(cur, best)) best = cur;
  }
  return best;
}

}  // namespace ghzcert
