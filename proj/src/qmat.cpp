// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "ghzcert/qmat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace ghzcert {

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix sigma_plus() { return (x() + y()) / std::sqrt(2.0); }
ComplexMatrix sigma_minus() { return (x() - y()) / std::sqrt(2.0); }

}  // namespace pauli

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  }
  if (!is_hermitian(m)) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian within tolerance");
  }
  m_ = (m + m.adjoint()) / 2.0;
}

DensityMatrix::DensityMatrix(const HermitianOperator& h) : h_(h) {
  const double tr = h_.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(tr) + ", expected 1");
  }
  if (min_eigenvalue(h_) < -kPositivityTol) {
    throw std::invalid_argument("DensityMatrix: operator is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int qubits) {
  if (qubits < 1) throw std::invalid_argument("maximally_mixed: need at least one qubit");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return DensityMatrix(HermitianOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d)));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const ComplexVector v = psi / norm;
  return DensityMatrix(HermitianOperator(v * v.adjoint()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

std::vector<double> eigenvalues(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues: solver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const HermitianOperator& h) { return eigenvalues(h).front(); }

double rayleigh(const HermitianOperator& h, const ComplexVector& v) {
  return (v.adjoint() * h.matrix() * v)(0, 0).real();
}

ComplexVector ghz_vector(int parties) {
  if (parties < 2) throw std::invalid_argument("ghz_vector: need at least two parties");
  const Eigen::Index d = Eigen::Index{1} << parties;
  ComplexVector v = ComplexVector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix ghz_state(int parties) { return DensityMatrix::pure(ghz_vector(parties)); }

DensityMatrix noisy_ghz(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("noisy_ghz: alpha must lie in [0, 1]");
  }
  const ComplexVector g = ghz_vector(4);
  const ComplexMatrix rho = (1.0 - alpha) * (g * g.adjoint()) +
                            (alpha / 16.0) * ComplexMatrix::Identity(16, 16);
  return DensityMatrix(HermitianOperator(rho));
}

double expectation(const DensityMatrix& rho, const HermitianOperator& obs) {
  if (rho.dim() != obs.dim()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const Complex v = (rho.matrix() * obs.matrix()).trace();
  if (std::abs(v.imag()) > 1e-10) {
    throw std::runtime_error("expectation: non-negligible imaginary part");
  }
  return v.real();
}

double fidelity(const DensityMatrix& rho, const ComplexVector& psi) {
  if (rho.dim() != psi.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

}  // namespace ghzcert
