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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "djqed/linalg.hpp"

namespace djqed {

/// Product space of `n_qutrits` three-level systems and one cavity mode
/// truncated to Fock levels 0..photon_cutoff. Qutrit 1 is the most
/// significant factor and the cavity the least significant.
struct Layout {
  int n_qutrits = 3;
  int photon_cutoff = 3;

  std::size_t qutrit_dim() const {
    std::size_t d = 1;
    for (int i = 0; i < n_qutrits; ++i) d *= 3;
    return d;
  }
  std::size_t cavity_dim() const { return static_cast<std::size_t>(photon_cutoff) + 1; }
  std::size_t dim() const { return qutrit_dim() * cavity_dim(); }

  void validate() const {
    if (n_qutrits < 1 || n_qutrits > 4) {
      throw std::invalid_argument("Layout: n_qutrits must be in [1, 4]");
    }
    if (photon_cutoff < 1) {
      throw std::invalid_argument("Layout: photon cutoff must be at least 1");
    }
  }

  /// Basis index of (levels of qutrits 1..n, photon number).
  std::size_t index(const std::vector<int>& levels, int photons) const {
    if (static_cast<int>(levels.size()) != n_qutrits) {
      throw std::invalid_argument("Layout::index: wrong number of qutrit levels");
    }
    if (photons < 0 || photons > photon_cutoff) {
      throw std::invalid_argument("Layout::index: photon number out of range");
    }
    std::size_t q = 0;
    for (int lv : levels) {
      if (lv < 0 || lv > 2) {
        throw std::invalid_argument("Layout::index: qutrit level out of range");
      }
      q = q * 3 + static_cast<std::size_t>(lv);
    }
    return q * cavity_dim() + static_cast<std::size_t>(photons);
  }

  int photons_of(std::size_t index) const { return static_cast<int>(index % cavity_dim()); }

  /// Level of qutrit j (1-based) in basis state `index`.
  int level_of(std::size_t index, int j) const {
    std::size_t q = index / cavity_dim();
    for (int k = n_qutrits; k > j; --k) q /= 3;
    return static_cast<int>(q % 3);
  }
};

/// |to><from| on a single qutrit.
inline ComplexMatrix level_operator(int to, int from) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(to, from) = 1.0;
  return m;
}

/// Embeds a 3x3 operator on qutrit j (1-based) into the full space.
inline ComplexMatrix qutrit_operator(const Layout& layout, int j, const ComplexMatrix& op) {
  if (j < 1 || j > layout.n_qutrits) {
    throw std::invalid_argument("qutrit_operator: qutrit index out of range");
  }
  std::vector<ComplexMatrix> factors;
  for (int q = 1; q <= layout.n_qutrits; ++q) {
    factors.push_back(q == j ? op : ComplexMatrix::Identity(3, 3));
  }
  auto cd = static_cast<Eigen::Index>(layout.cavity_dim());
  factors.push_back(ComplexMatrix::Identity(cd, cd));
  return tensor_product(factors);
}

inline ComplexMatrix cavity_annihilation(const Layout& layout) {
  auto cd = static_cast<Eigen::Index>(layout.cavity_dim());
  ComplexMatrix a = ComplexMatrix::Zero(cd, cd);
  for (Eigen::Index n = 1; n < cd; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  auto qd = static_cast<Eigen::Index>(layout.qutrit_dim());
  return tensor_product(ComplexMatrix::Identity(qd, qd), a);
}

/// Operator on the qutrit register extended by the cavity identity.
inline ComplexMatrix embed_qutrit_register(const Layout& layout, const ComplexMatrix& op) {
  if (static_cast<std::size_t>(op.rows()) != layout.qutrit_dim()) {
    throw std::invalid_argument("embed_qutrit_register: operator dimension mismatch");
  }
  auto cd = static_cast<Eigen::Index>(layout.cavity_dim());
  return tensor_product(op, ComplexMatrix::Identity(cd, cd));
}

/// Total excitation number a†a + Σ_j (|1><1|_j + 2 |2><2|_j), diagonal.
inline ComplexMatrix excitation_operator(const Layout& layout) {
  auto d = static_cast<Eigen::Index>(layout.dim());
  ComplexMatrix n = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < layout.dim(); ++i) {
    int total = layout.photons_of(i);
    for (int j = 1; j <= layout.n_qutrits; ++j) total += layout.level_of(i, j);
    n(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(total);
  }
  return n;
}

/// Maps a qubit-register state (2^n amplitudes, qubit 1 most significant)
/// onto qutrit levels 0/1 with the cavity in vacuum.
inline StateVector embed_qubit_state(const Layout& layout, const StateVector& qubits) {
  std::size_t n = static_cast<std::size_t>(layout.n_qutrits);
  if (qubits.dim() != (std::size_t{1} << n)) {
    throw std::invalid_argument("embed_qubit_state: dimension mismatch");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(layout.dim()));
  for (std::size_t x = 0; x < qubits.dim(); ++x) {
    std::vector<int> levels(n);
    for (std::size_t q = 0; q < n; ++q) {
      levels[q] = static_cast<int>((x >> (n - 1 - q)) & 1U);
    }
    v(static_cast<Eigen::Index>(layout.index(levels, 0))) = qubits[x];
  }
  return StateVector(std::move(v));
}

/// Population of Fock level `photons`.
inline double photon_population(const Layout& layout, const ComplexMatrix& rho, int photons) {
  double p = 0.0;
  for (std::size_t i = 0; i < layout.dim(); ++i) {
    if (layout.photons_of(i) == photons) {
      p += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
  }
  return p;
}

}  // namespace djqed
