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

#include <random>

#include "djqed/linalg.hpp"

namespace djqed::testing {

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, dim, dim));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline StateVector random_state(std::mt19937_64& rng, Eigen::Index dim) {
  return StateVector::normalized(random_matrix(rng, dim, 1).col(0));
}

/// Full-rank mixed state A A† / tr(A A†).
inline DensityMatrix random_density(std::mt19937_64& rng, Eigen::Index dim) {
  ComplexMatrix a = random_matrix(rng, dim, dim);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix::from_matrix(0.5 * (rho + rho.adjoint()));
}

}  // namespace djqed::testing
