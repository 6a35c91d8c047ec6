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
#include <numbers>
#include <stdexcept>

namespace djqed {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Qutrit-cavity couplings in angular units (rad/s). The resonant couplings
/// drive the intended transition of the active qutrit; the spurious ones
/// couple its other transition off resonance with detunings
///   delta01 = b0 * g01_spurious > 0,   delta12 = -b1 * g12_spurious < 0.
struct CouplingParams {
  double g01 = 0.0;
  double g01_spurious = 0.0;
  double g12 = 0.0;
  double g12_spurious = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;

  double delta01() const { return b0 * g01_spurious; }
  double delta12() const { return -b1 * g12_spurious; }

  /// Transmon-like defaults: g01 = g01' = g, g12 = g12' = sqrt(2) g.
  static CouplingParams transmon(double g_over_2pi_hz, double b0, double b1) {
    double g = kTwoPi * g_over_2pi_hz;
    CouplingParams p{g, g, std::sqrt(2.0) * g, std::sqrt(2.0) * g, b0, b1};
    p.validate();
    return p;
  }

  /// Same resonant couplings with the off-resonant terms removed.
  CouplingParams without_spurious() const {
    CouplingParams p = *this;
    p.g01_spurious = 0.0;
    p.g12_spurious = 0.0;
    return p;
  }

  /// Largest angular frequency appearing in the segment Hamiltonians.
  double max_angular_frequency() const {
    return std::fmax(std::fmax(std::abs(delta01()), std::abs(delta12())), std::fmax(g01, g12));
  }

  void validate() const {
    if (!(g01 > 0.0) || !(g12 > 0.0)) {
      throw std::invalid_argument("couplings g01 and g12 must be positive");
    }
    if (!(g01_spurious >= 0.0) || !(g12_spurious >= 0.0)) {
      throw std::invalid_argument("spurious couplings must be nonnegative");
    }
    if (!(b0 > 0.0) || !(b1 > 0.0)) {
      throw std::invalid_argument("b0 and b1 must be positive");
    }
  }
};

/// Lindblad rates in 1/s, identical for every qutrit.
struct NoiseParams {
  double kappa = 0.0;
  double gamma21 = 0.0;
  double gamma20 = 0.0;
  double gamma10 = 0.0;
  double gamma_phi2 = 0.0;
  double gamma_phi1 = 0.0;

  static NoiseParams none() { return {}; }

  /// Builds rates from lifetimes given in microseconds.
  static NoiseParams from_inverse_us(double kappa_inv, double gamma21_inv, double gamma20_inv,
                                     double gamma10_inv, double gamma_phi2_inv,
                                     double gamma_phi1_inv) {
    auto rate = [](double inv_us) {
      if (!(inv_us > 0.0)) {
        throw std::invalid_argument("inverse rates must be positive");
      }
      return 1e6 / inv_us;
    };
    return {rate(kappa_inv),    rate(gamma21_inv),    rate(gamma20_inv),
            rate(gamma10_inv),  rate(gamma_phi2_inv), rate(gamma_phi1_inv)};
  }

  /// κ⁻¹ = 5 μs, γ21⁻¹ = 15 μs, γ20⁻¹ = 150 μs, γ10⁻¹ = 20 μs, γφ2⁻¹ = γφ1⁻¹ = 10 μs.
  static NoiseParams reference() { return from_inverse_us(5.0, 15.0, 150.0, 20.0, 10.0, 10.0); }

  bool is_zero() const {
    return kappa == 0.0 && gamma21 == 0.0 && gamma20 == 0.0 && gamma10 == 0.0 &&
           gamma_phi2 == 0.0 && gamma_phi1 == 0.0;
  }

  void validate() const {
    if (kappa < 0.0 || gamma21 < 0.0 || gamma20 < 0.0 || gamma10 < 0.0 || gamma_phi2 < 0.0 ||
        gamma_phi1 < 0.0) {
      throw std::invalid_argument("noise rates must be nonnegative");
    }
  }
};

inline constexpr double kReferenceGOver2PiHz = 15e6;
inline constexpr double kReferenceB1 = 10.0;

}  // namespace djqed
