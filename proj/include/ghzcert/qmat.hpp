// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Dense complex-matrix layer for few-qubit states and observables.
//
// Conventions: |H> maps to basis state 0 and |V> to basis state 1, and the
// first party is the leftmost (most significant) tensor factor.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ghzcert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// (X + Y) / sqrt(2)
ComplexMatrix sigma_plus();
/// (X - Y) / sqrt(2)
ComplexMatrix sigma_minus();
}  // namespace pauli

/// A square matrix that is Hermitian within kHermitianTol.
///
/// The stored matrix is the symmetrized (H + H^dagger) / 2 of the input, so
/// downstream eigen-solvers always see an exactly Hermitian operand.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

/// Unit-trace positive semidefinite operator on 2^n dimensions.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianOperator& h);

  static DensityMatrix maximally_mixed(int qubits);
  static DensityMatrix pure(const ComplexVector& psi);

  const ComplexMatrix& matrix() const { return h_.matrix(); }
  const HermitianOperator& op() const { return h_; }
  Eigen::Index dim() const { return h_.dim(); }

 private:
  HermitianOperator h_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues in ascending order.
std::vector<double> eigenvalues(const HermitianOperator& h);
double min_eigenvalue(const HermitianOperator& h);

/// sum_i v_i^* (H v)_i for a unit vector v.
double rayleigh(const HermitianOperator& h, const ComplexVector& v);

/// (|0...0> + |1...1>) / sqrt(2) as a state vector.
ComplexVector ghz_vector(int parties);
DensityMatrix ghz_state(int parties);

/// (1 - alpha) |GHZ><GHZ| + alpha 1/16 on four qubits.
DensityMatrix noisy_ghz(double alpha);

/// Tr(rho O); throws if the imaginary part exceeds 1e-10.
double expectation(const DensityMatrix& rho, const HermitianOperator& obs);

/// <psi| rho |psi>
double fidelity(const DensityMatrix& rho, const ComplexVector& psi);

}  // namespace ghzcert
