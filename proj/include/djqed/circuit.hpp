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

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "djqed/boolean.hpp"
#include "djqed/linalg.hpp"
#include "djqed/synth.hpp"

namespace djqed {

/// Exact outcome probabilities over |x1 x2 x3>, index = basis state.
struct MeasurementDistribution {
  std::array<double, 8> probabilities{};

  double p000() const { return probabilities[0]; }
};

enum class DjDecision { kConstant, kBalanced };

inline const char* to_string(DjDecision d) {
  return d == DjDecision::kConstant ? "constant" : "balanced";
}

inline ComplexMatrix hadamard_all() {
  return gate_matrix(Hadamard{1}) * gate_matrix(Hadamard{2}) * gate_matrix(Hadamard{3});
}

/// H⊗3, phase oracle, H⊗3 on |000>, then |amplitude|^2.
inline MeasurementDistribution run_dj(const TruthTable& f) {
  if (f.n() != kNumQubits) {
    throw std::invalid_argument("run_dj: the function must be on 3 bits");
  }
  if (!is_constant(f) && !is_balanced(f)) {
    throw std::invalid_argument("function is neither constant nor balanced");
  }
  ComplexMatrix hhh = hadamard_all();
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0) = 1.0;
  psi = hhh * (gate_matrix(Oracle{f}) * (hhh * psi));

  MeasurementDistribution d;
  for (int i = 0; i < 8; ++i) {
    d.probabilities[static_cast<std::size_t>(i)] = std::norm(psi(i));
  }
  return d;
}

inline DjDecision dj_decision(const MeasurementDistribution& d, double threshold = 0.5) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("dj_decision: threshold must lie in (0, 1)");
  }
  return d.p000() > threshold ? DjDecision::kConstant : DjDecision::kBalanced;
}

/// Demonstration sampler; counts per basis state for `shots` draws.
inline std::array<std::uint64_t, 8> sample_shots(const MeasurementDistribution& d,
                                                 std::uint64_t shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> dist(d.probabilities.begin(), d.probabilities.end());
  std::array<std::uint64_t, 8> counts{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    counts[static_cast<std::size_t>(dist(rng))] += 1;
  }
  return counts;
}

/// The three benchmark operations H⊗3 · U_f · H⊗3, with U_f the type-2,
/// type-3 and type-4 oracles carrying the most single-qubit gates.
enum class JointOpId { kU1, kU2, kU3 };

inline constexpr std::array<JointOpId, 3> kAllJointOps{JointOpId::kU1, JointOpId::kU2,
                                                        JointOpId::kU3};

inline const char* to_string(JointOpId op) {
  switch (op) {
    case JointOpId::kU1:
      return "U1";
    case JointOpId::kU2:
      return "U2";
    case JointOpId::kU3:
      return "U3";
  }
  return "?";
}

inline JointOpId parse_joint_op(const std::string& s) {
  if (s == "U1") return JointOpId::kU1;
  if (s == "U2") return JointOpId::kU2;
  if (s == "U3") return JointOpId::kU3;
  throw std::invalid_argument("unknown joint operation \"" + s + "\" (expected U1, U2 or U3)");
}

/// Oracle gate strings, written left to right and applied right to left.
inline std::vector<GateOp> joint_op_oracle_gates(JointOpId op) {
  switch (op) {
    case JointOpId::kU1:
      return {Cp{1, 2}, SigmaZ{1}, SigmaZ{2}, SigmaZ{3}};
    case JointOpId::kU2:
      return {TwoTargetCp{2, 1, 3}, SigmaZ{1}, SigmaZ{2}};
    case JointOpId::kU3:
      return {TwoTargetCp{1, 2, 3}, Cp{2, 3}, SigmaZ{1}, SigmaZ{2}};
  }
  throw std::invalid_argument("unknown joint operation");
}

/// Full gate string H⊗3 · oracle · H⊗3.
inline std::vector<GateOp> joint_op_gates(JointOpId op) {
  std::vector<GateOp> gates{Hadamard{1}, Hadamard{2}, Hadamard{3}};
  for (const auto& g : joint_op_oracle_gates(op)) {
    gates.push_back(g);
  }
  gates.insert(gates.end(), {Hadamard{1}, Hadamard{2}, Hadamard{3}});
  return gates;
}

namespace detail {

inline TruthTable table_from_anf(std::initializer_list<std::uint64_t> monomials) {
  std::uint64_t c = 0;
  for (auto m : monomials) {
    c |= std::uint64_t{1} << m;
  }
  return truth_table_of(AnfForm{3, c});
}

}  // namespace detail

/// Named oracle functions behind U1, U2, U3. Monomial masks: x1 = 0b100,
/// x2 = 0b010, x3 = 0b001.
inline TruthTable joint_op_function(JointOpId op) {
  switch (op) {
    case JointOpId::kU1:  // U_f30: x1 ^ x2 ^ x3 ^ x1x2
      return detail::table_from_anf({0b100, 0b010, 0b001, 0b110});
    case JointOpId::kU2:  // U_f9: x1x2 ^ x2x3 ^ x1 ^ x2
      return detail::table_from_anf({0b110, 0b011, 0b100, 0b010});
    case JointOpId::kU3:  // U_f7: x1x2 ^ x1x3 ^ x2x3 ^ x1 ^ x2
      return detail::table_from_anf({0b110, 0b101, 0b011, 0b100, 0b010});
  }
  throw std::invalid_argument("unknown joint operation");
}

inline const char* joint_op_alias(JointOpId op) {
  switch (op) {
    case JointOpId::kU1:
      return "U_f30";
    case JointOpId::kU2:
      return "U_f9";
    case JointOpId::kU3:
      return "U_f7";
  }
  return "?";
}

/// Tabulated ideal outputs of the joint operations on |000>.
inline StateVector ideal_joint_output(JointOpId op) {
  ComplexVector v = ComplexVector::Zero(8);
  switch (op) {
    case JointOpId::kU1:  // (-|001> + |011> + |101> + |111>) / 2
      v(0b001) = -0.5;
      v(0b011) = 0.5;
      v(0b101) = 0.5;
      v(0b111) = 0.5;
      break;
    case JointOpId::kU2:  // (-|001> + |011> + |100> + |110>) / 2
      v(0b001) = -0.5;
      v(0b011) = 0.5;
      v(0b100) = 0.5;
      v(0b110) = 0.5;
      break;
    case JointOpId::kU3:  // (-|001> + |010> + |100> + |111>) / 2
      v(0b001) = -0.5;
      v(0b010) = 0.5;
      v(0b100) = 0.5;
      v(0b111) = 0.5;
      break;
  }
  return StateVector(std::move(v));
}

/// Applies the gate string matrix by matrix, rightmost first, to |000>.
inline StateVector composed_joint_output(JointOpId op) {
  auto gates = joint_op_gates(op);
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0) = 1.0;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    psi = gate_matrix(*it) * psi;
  }
  return StateVector::normalized(std::move(psi));
}

}  // namespace djqed
