// Copyright 2026 The djqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace djqed {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when an integration or a state check produces values that cannot be
/// trusted (non-finite entries, negative fidelity radicands, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Kronecker product with `a` as the more significant factor:
/// result((i*b.rows()+k), (j*b.cols()+l)) = a(i,j) * b(k,l).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Folds left to right: factors[0] ⊗ factors[1] ⊗ ...
inline ComplexMatrix tensor_product(const std::vector<ComplexMatrix>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("tensor_product: no factors");
  }
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    out = tensor_product(out, factors[i]);
  }
  return out;
}

inline double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    return INFINITY;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
  return hermiticity_error(m) <= tol;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) {
    return false;
  }
  ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tol;
}

/// Smallest eigenvalue of the hermitian part (m + m†)/2.
inline double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigenvalue solver did not converge");
  }
  return solver.eigenvalues().minCoeff();
}

/// Normalized pure state.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-10;

  explicit StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() == 0) {
      throw std::invalid_argument("StateVector: empty amplitude vector");
    }
    double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw std::invalid_argument("StateVector: norm " + std::to_string(norm) + " is not 1");
    }
  }

  /// Scales `amplitudes` to unit norm; throws if it is zero.
  static StateVector normalized(ComplexVector amplitudes) {
    double norm = amplitudes.norm();
    if (!(norm > 0.0)) {
      throw std::invalid_argument("StateVector: cannot normalize a zero vector");
    }
    amplitudes /= norm;
    return StateVector(std::move(amplitudes));
  }

  static StateVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
      throw std::invalid_argument("StateVector::basis: index out of range");
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return StateVector(std::move(v));
  }

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  ComplexMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  ComplexVector amplitudes_;
};

/// Mixed state. Checked construction enforces unit trace, hermiticity and
/// positivity to the tolerances below; `unchecked` is for integrator output
/// whose health is tracked separately as diagnostics.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-6;
  static constexpr double kHermiticityTolerance = 1e-8;
  static constexpr double kEigenvalueFloor = -1e-8;

  static DensityMatrix from_matrix(ComplexMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }
    double trace_err = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_err > kTraceTolerance) {
      throw std::invalid_argument("DensityMatrix: trace differs from 1 by " +
                                  std::to_string(trace_err));
    }
    if (djqed::hermiticity_error(m) > kHermiticityTolerance) {
      throw std::invalid_argument("DensityMatrix: matrix is not hermitian");
    }
    if (min_hermitian_eigenvalue(m) < kEigenvalueFloor) {
      throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m)); }

  static DensityMatrix pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  double trace_error() const { return std::abs(m_.trace() - Complex(1.0, 0.0)); }
  double hermiticity_error() const { return djqed::hermiticity_error(m_); }
  double min_eigenvalue() const { return min_hermitian_eigenvalue(m_); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// Returns U rho U†.
inline DensityMatrix apply_unitary(const ComplexMatrix& u, const DensityMatrix& rho) {
  if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != rho.dim()) {
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  }
  if (!is_unitary(u, 1e-10)) {
    throw std::invalid_argument("apply_unitary: operator is not unitary");
  }
  return DensityMatrix::unchecked(u * rho.matrix() * u.adjoint());
}

/// F = sqrt(<psi|rho|psi>). Radicands in [-1e-10, 0) are clamped to zero;
/// anything more negative means rho is corrupted.
inline double state_fidelity(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) {
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  }
  const ComplexVector& v = psi.amplitudes();
  double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  if (!std::isfinite(overlap)) {
    throw NumericalError("state_fidelity: non-finite overlap");
  }
  if (overlap < -1e-10) {
    throw NumericalError("state_fidelity: negative overlap " + std::to_string(overlap));
  }
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

}  // namespace djqed
