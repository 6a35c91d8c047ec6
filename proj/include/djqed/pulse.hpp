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

#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "djqed/circuit.hpp"
#include "djqed/params.hpp"
#include "djqed/synth.hpp"

namespace djqed {

enum class Transition {
  kG01,  // |0> <-> |1>
  kE12,  // |1> <-> |2>
};

inline const char* to_string(Transition t) { return t == Transition::kG01 ? "G01" : "E12"; }

/// One resonant interval: the cavity interacts with `active_qutrit` on
/// `transition` for `duration` seconds; the other qutrits are decoupled.
struct PulseSegment {
  int active_qutrit = 1;
  Transition transition = Transition::kG01;
  double duration = 0.0;
  std::string label;
};

/// Instantaneous, noiseless single-qubit layer (simultaneous H or σz gates).
struct InstantaneousLayer {
  std::vector<GateOp> gates;
  std::string label;
};

using ScheduleItem = std::variant<PulseSegment, InstantaneousLayer>;

struct Schedule {
  std::vector<ScheduleItem> items;
  std::string source;

  std::size_t segment_count() const {
    std::size_t n = 0;
    for (const auto& item : items) {
      n += std::holds_alternative<PulseSegment>(item) ? 1 : 0;
    }
    return n;
  }

  double total_duration() const {
    double t = 0.0;
    for (const auto& item : items) {
      if (const auto* seg = std::get_if<PulseSegment>(&item)) {
        t += seg->duration;
      }
    }
    return t;
  }

  void append(const Schedule& other) { items.insert(items.end(), other.items.begin(), other.items.end()); }
};

namespace detail {

inline void check_couplings(double g01, double g12) {
  if (!(g01 > 0.0) || !(g12 > 0.0)) {
    throw std::invalid_argument("pulse compiler: couplings must be positive");
  }
}

}  // namespace detail

/// CP between control j and target k in three resonant steps:
///   (i)   j on |0>-|1> for π/(2 g01):  |1>_j|0>_c -> -i|0>_j|1>_c
///   (ii)  k on |1>-|2> for π/g12:      |1>_k|1>_c -> -|1>_k|1>_c
///   (iii) j on |0>-|1> for 3π/(2 g01): |0>_j|1>_c -> i|1>_j|0>_c
inline Schedule compile_cp(int j, int k, double g01, double g12) {
  detail::check_couplings(g01, g12);
  validate_gate(Cp{j, k});
  const double pi = std::numbers::pi;
  std::string name = "C_" + std::to_string(j) + std::to_string(k);
  Schedule s;
  s.source = to_string(GateOp{Cp{j, k}});
  s.items.emplace_back(PulseSegment{j, Transition::kG01, pi / (2.0 * g01), name + " step (i)"});
  s.items.emplace_back(PulseSegment{k, Transition::kE12, pi / g12, name + " step (ii)"});
  s.items.emplace_back(PulseSegment{j, Transition::kG01, 3.0 * pi / (2.0 * g01), name + " step (iii)"});
  return s;
}

/// Two-target CP: the CP sequence with a second |1>-|2> π pulse on the other
/// target inserted before the photon is swapped back.
inline Schedule compile_two_target(int j, int k, int l, double g01, double g12) {
  detail::check_couplings(g01, g12);
  validate_gate(TwoTargetCp{j, k, l});
  const double pi = std::numbers::pi;
  std::string name = "T_" + std::to_string(j) + std::to_string(k) + std::to_string(l);
  Schedule s;
  s.source = to_string(GateOp{TwoTargetCp{j, k, l}});
  s.items.emplace_back(PulseSegment{j, Transition::kG01, pi / (2.0 * g01), name + " step (i)"});
  s.items.emplace_back(PulseSegment{k, Transition::kE12, pi / g12, name + " step (ii)"});
  s.items.emplace_back(PulseSegment{l, Transition::kE12, pi / g12, name + " step (iii)"});
  s.items.emplace_back(PulseSegment{j, Transition::kG01, 3.0 * pi / (2.0 * g01), name + " step (iv)"});
  return s;
}

/// Lowers one entangling gate; σz and H become instantaneous layers.
inline Schedule compile_gate(const GateOp& g, const CouplingParams& p) {
  if (const auto* c = std::get_if<Cp>(&g)) {
    return compile_cp(c->control, c->target, p.g01, p.g12);
  }
  if (const auto* t = std::get_if<TwoTargetCp>(&g)) {
    return compile_two_target(t->control, t->target1, t->target2, p.g01, p.g12);
  }
  if (std::holds_alternative<Oracle>(g)) {
    throw std::invalid_argument("compile_gate: synthesize the oracle first");
  }
  Schedule s;
  s.source = to_string(g);
  s.items.emplace_back(InstantaneousLayer{{g}, to_string(g)});
  return s;
}

inline InstantaneousLayer hadamard_layer() {
  return {{Hadamard{1}, Hadamard{2}, Hadamard{3}}, "H⊗3"};
}

/// H⊗3, simultaneous σz layer, entangling blocks in application order, H⊗3.
inline Schedule compile_joint_op(JointOpId op, const CouplingParams& p) {
  Schedule s;
  s.source = to_string(op);
  s.items.emplace_back(hadamard_layer());

  auto gates = joint_op_oracle_gates(op);
  InstantaneousLayer z_layer{{}, "sigma_z layer"};
  std::vector<GateOp> entangling;
  for (const auto& g : gates) {
    if (std::holds_alternative<SigmaZ>(g)) {
      z_layer.gates.push_back(g);
    } else {
      entangling.push_back(g);
    }
  }
  z_layer.label = "sigma_z layer {";
  for (std::size_t i = 0; i < z_layer.gates.size(); ++i) {
    z_layer.label += (i ? "," : "") + std::to_string(std::get<SigmaZ>(z_layer.gates[i]).qubit);
  }
  z_layer.label += "}";
  s.items.emplace_back(z_layer);

  // Written left to right, applied right to left.
  for (auto it = entangling.rbegin(); it != entangling.rend(); ++it) {
    s.append(compile_gate(*it, p));
  }
  s.items.emplace_back(hadamard_layer());
  return s;
}

}  // namespace djqed
