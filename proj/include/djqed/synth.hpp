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
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "djqed/boolean.hpp"
#include "djqed/linalg.hpp"

namespace djqed {

inline constexpr int kNumQubits = 3;

// Qubit indices are 1-based throughout, matching the x1, x2, x3 naming.
struct SigmaZ {
  int qubit;
  friend bool operator==(const SigmaZ&, const SigmaZ&) = default;
};
struct Hadamard {
  int qubit;
  friend bool operator==(const Hadamard&, const Hadamard&) = default;
};
/// Controlled phase: (-1)^(x_control * x_target). Symmetric as a matrix.
struct Cp {
  int control;
  int target;
  friend bool operator==(const Cp&, const Cp&) = default;
};
/// One control, two targets: (-1)^(x_c x_t1) (-1)^(x_c x_t2).
struct TwoTargetCp {
  int control;
  int target1;
  int target2;
  friend bool operator==(const TwoTargetCp&, const TwoTargetCp&) = default;
};
struct Oracle {
  TruthTable f;
  friend bool operator==(const Oracle&, const Oracle&) = default;
};

using GateOp = std::variant<SigmaZ, Hadamard, Cp, TwoTargetCp, Oracle>;

namespace detail {

inline void check_qubit(int q) {
  if (q < 1 || q > kNumQubits) {
    throw std::invalid_argument("qubit index " + std::to_string(q) + " is not in {1,2,3}");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline int bit_of(std::size_t index, int qubit) {
  return static_cast<int>((index >> (kNumQubits - qubit)) & 1U);
}

}  // namespace detail

inline void validate_gate(const GateOp& g) {
  std::visit(detail::overloaded{
                 [](const SigmaZ& z) { detail::check_qubit(z.qubit); },
                 [](const Hadamard& h) { detail::check_qubit(h.qubit); },
                 [](const Cp& c) {
                   detail::check_qubit(c.control);
                   detail::check_qubit(c.target);
                   if (c.control == c.target) {
                     throw std::invalid_argument("Cp: control and target must differ");
                   }
                 },
                 [](const TwoTargetCp& t) {
                   detail::check_qubit(t.control);
                   detail::check_qubit(t.target1);
                   detail::check_qubit(t.target2);
                   if (t.control == t.target1 || t.control == t.target2 || t.target1 == t.target2) {
                     throw std::invalid_argument("TwoTargetCp: qubits must be distinct");
                   }
                 },
                 [](const Oracle& o) {
                   if (o.f.n() != kNumQubits) {
                     throw std::invalid_argument("Oracle: truth table must be on 3 bits");
                   }
                 },
             },
             g);
}

inline bool is_diagonal_gate(const GateOp& g) { return !std::holds_alternative<Hadamard>(g); }

/// Exact ±1 diagonal of a diagonal gate on the 8-dim qubit space. Throws for
/// Hadamard.
inline std::array<int, 8> gate_diagonal(const GateOp& g) {
  validate_gate(g);
  using detail::bit_of;
  std::array<int, 8> d{};
  for (std::size_t x = 0; x < d.size(); ++x) {
    int parity = std::visit(
        detail::overloaded{
            [&](const SigmaZ& z) { return bit_of(x, z.qubit); },
            [&](const Cp& c) { return bit_of(x, c.control) & bit_of(x, c.target); },
            [&](const TwoTargetCp& t) {
              return (bit_of(x, t.control) & bit_of(x, t.target1)) ^
                     (bit_of(x, t.control) & bit_of(x, t.target2));
            },
            [&](const Oracle& o) { return o.f[x]; },
            [&](const Hadamard&) -> int {
              throw std::invalid_argument("gate_diagonal: Hadamard is not diagonal");
            },
        },
        g);
    d[x] = parity ? -1 : 1;
  }
  return d;
}

/// Dense 8x8 unitary on the qubit register.
inline ComplexMatrix gate_matrix(const GateOp& g) {
  validate_gate(g);
  if (const auto* h = std::get_if<Hadamard>(&g)) {
    ComplexMatrix had(2, 2);
    had << 1.0, 1.0, 1.0, -1.0;
    had /= std::sqrt(2.0);
    std::vector<ComplexMatrix> factors(kNumQubits, ComplexMatrix::Identity(2, 2));
    factors[static_cast<std::size_t>(h->qubit - 1)] = had;
    return tensor_product(factors);
  }
  auto d = gate_diagonal(g);
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 8; ++i) {
    m(i, i) = static_cast<double>(d[static_cast<std::size_t>(i)]);
  }
  return m;
}

/// The same gate on three qutrits (27-dim, qutrit 1 most significant). Level
/// |2> is left untouched: Hadamard acts on the {|0>,|1>} block only and
/// diagonal phases are applied only when every involved qutrit is in |0> or
/// |1>.
inline ComplexMatrix qutrit_gate_matrix(const GateOp& g) {
  validate_gate(g);
  constexpr int kDim = 27;
  if (const auto* h = std::get_if<Hadamard>(&g)) {
    ComplexMatrix had = ComplexMatrix::Identity(3, 3);
    had(0, 0) = had(0, 1) = had(1, 0) = 1.0 / std::sqrt(2.0);
    had(1, 1) = -1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> factors(kNumQubits, ComplexMatrix::Identity(3, 3));
    factors[static_cast<std::size_t>(h->qubit - 1)] = had;
    return tensor_product(factors);
  }
  auto d = gate_diagonal(g);
  ComplexMatrix m = ComplexMatrix::Identity(kDim, kDim);
  for (int idx = 0; idx < kDim; ++idx) {
    std::array<int, 3> lv{idx / 9, (idx / 3) % 3, idx % 3};
    auto involved = std::visit(
        detail::overloaded{
            [](const SigmaZ& z) { return std::vector<int>{z.qubit}; },
            [](const Cp& c) { return std::vector<int>{c.control, c.target}; },
            [](const TwoTargetCp& t) { return std::vector<int>{t.control, t.target1, t.target2}; },
            [](const auto&) { return std::vector<int>{1, 2, 3}; },
        },
        g);
    bool in_subspace = std::all_of(involved.begin(), involved.end(), [&](int q) {
      return lv[static_cast<std::size_t>(q - 1)] < 2;
    });
    if (!in_subspace) {
      continue;
    }
    // Levels outside `involved` do not affect the phase; read it off the
    // qubit index with those positions set to 0.
    std::size_t x = 0;
    for (int q : involved) {
      x |= static_cast<std::size_t>(lv[static_cast<std::size_t>(q - 1)]) << (kNumQubits - q);
    }
    m(idx, idx) = static_cast<double>(d[x]);
  }
  return m;
}

inline std::string to_string(const GateOp& g) {
  return std::visit(
      detail::overloaded{
          [](const SigmaZ& z) { return "Z(" + std::to_string(z.qubit) + ")"; },
          [](const Hadamard& h) { return "H(" + std::to_string(h.qubit) + ")"; },
          [](const Cp& c) {
            return "C(" + std::to_string(c.control) + "," + std::to_string(c.target) + ")";
          },
          [](const TwoTargetCp& t) {
            return "T(" + std::to_string(t.control) + ";" + std::to_string(t.target1) + "," +
                   std::to_string(t.target2) + ")";
          },
          [](const Oracle& o) { return "U_f[" + o.f.to_string() + "]"; },
      },
      g);
}

/// Inverse of to_string.
inline GateOp parse_gate(const std::string& text) {
  static const std::regex single(R"(([ZH])\((\d)\))");
  static const std::regex cp(R"(C\((\d),(\d)\))");
  static const std::regex two(R"(T\((\d);(\d),(\d)\))");
  static const std::regex oracle(R"(U_f\[([01]+)\])");
  std::smatch m;
  GateOp g = SigmaZ{1};
  if (std::regex_match(text, m, single)) {
    int q = std::stoi(m[2]);
    g = m[1] == "Z" ? GateOp{SigmaZ{q}} : GateOp{Hadamard{q}};
  } else if (std::regex_match(text, m, cp)) {
    g = Cp{std::stoi(m[1]), std::stoi(m[2])};
  } else if (std::regex_match(text, m, two)) {
    g = TwoTargetCp{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3])};
  } else if (std::regex_match(text, m, oracle)) {
    g = Oracle{TruthTable::parse(m[1].str())};
  } else {
    throw std::invalid_argument("cannot parse gate \"" + text + "\"");
  }
  validate_gate(g);
  return g;
}

/// Ordering key: two-target CP < CP < σz < H < oracle, then by qubit indices.
/// This is the left-to-right order in which gate strings are written.
inline std::tuple<int, int, int, int> gate_sort_key(const GateOp& g) {
  return std::visit(detail::overloaded{
                        [](const TwoTargetCp& t) { return std::tuple{0, t.control, t.target1, t.target2}; },
                        [](const Cp& c) { return std::tuple{1, c.control, c.target, 0}; },
                        [](const SigmaZ& z) { return std::tuple{2, z.qubit, 0, 0}; },
                        [](const Hadamard& h) { return std::tuple{3, h.qubit, 0, 0}; },
                        [](const Oracle& o) {
                          return std::tuple{4, static_cast<int>(o.f.bits()), 0, 0};
                        },
                    },
                    g);
}

/// Gate string for a phase oracle. `gates` is written left to right and
/// applied right to left; since every gate here is diagonal they commute and
/// the order is presentational.
struct Decomposition {
  std::vector<GateOp> gates;
  int type_class = 0;
  TruthTable target{3, 0};

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// 1 = σz only; 2 = one CP; 3 = one two-target CP; 4 = both.
inline int type_class_of(const std::vector<GateOp>& gates) {
  int cps = 0;
  int twos = 0;
  for (const auto& g : gates) {
    cps += std::holds_alternative<Cp>(g) ? 1 : 0;
    twos += std::holds_alternative<TwoTargetCp>(g) ? 1 : 0;
  }
  if (cps > 1 || twos > 1) {
    return 0;
  }
  return 1 + cps + 2 * twos;
}

/// Product of the gate diagonals in exact integer arithmetic.
inline std::array<int, 8> diagonal_product(const std::vector<GateOp>& gates) {
  std::array<int, 8> d;
  d.fill(1);
  for (const auto& g : gates) {
    auto gd = gate_diagonal(g);
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] *= gd[i];
    }
  }
  return d;
}

/// Exact entrywise check of the gate product against the oracle, plus the
/// structural limits (≤ 1 CP, ≤ 1 two-target CP, consistent type class).
inline bool verify(const Decomposition& dec) {
  auto oracle = oracle_matrix(dec.target);
  auto d = diagonal_product(dec.gates);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] != oracle.diagonal[i]) {
      return false;
    }
  }
  int type = type_class_of(dec.gates);
  return type != 0 && type == dec.type_class;
}

inline void sort_gates(std::vector<GateOp>& gates) {
  std::sort(gates.begin(), gates.end(),
            [](const GateOp& a, const GateOp& b) { return gate_sort_key(a) < gate_sort_key(b); });
}

namespace detail {

inline void check_synthesizable(const TruthTable& f) {
  if (f.n() != kNumQubits) {
    throw std::invalid_argument("synthesis is defined for 3-bit functions only");
  }
  if (!is_balanced(f)) {
    throw std::invalid_argument("function " + f.to_string() + " is not balanced");
  }
  if (f[0] != 0) {
    throw std::invalid_argument("function " + f.to_string() + " has f(000) = 1; use its complement");
  }
}

}  // namespace detail

/// Reads the gate string off the algebraic normal form: every linear term is
/// a σz, a lone quadratic term is a CP, two quadratic terms sharing a
/// variable form a two-target CP with the shared variable as control, and
/// all three quadratic terms become T(1;2,3) plus C(2,3).
inline Decomposition synthesize(const TruthTable& f) {
  detail::check_synthesizable(f);
  AnfForm anf = anf_of(f);
  if (anf.coefficient(0) != 0) {
    throw std::logic_error("synthesize: nonzero constant term for f(000) = 0");
  }
  if (!anf.monomials_of_degree(3).empty()) {
    throw std::logic_error("synthesize: cubic ANF term in a balanced function " + f.to_string());
  }

  std::vector<GateOp> gates;
  std::vector<std::vector<int>> quad;
  for (auto m : anf.monomials_of_degree(2)) {
    quad.push_back(anf.variables(m));
  }
  switch (quad.size()) {
    case 0:
      break;
    case 1:
      gates.push_back(Cp{quad[0][0], quad[0][1]});
      break;
    case 2: {
      int shared = 0;
      for (int v : quad[0]) {
        if (std::find(quad[1].begin(), quad[1].end(), v) != quad[1].end()) {
          shared = v;
        }
      }
      std::vector<int> targets;
      for (const auto& q : quad) {
        for (int v : q) {
          if (v != shared) {
            targets.push_back(v);
          }
        }
      }
      std::sort(targets.begin(), targets.end());
      gates.push_back(TwoTargetCp{shared, targets[0], targets[1]});
      break;
    }
    case 3:
      gates.push_back(TwoTargetCp{1, 2, 3});
      gates.push_back(Cp{2, 3});
      break;
    default:
      throw std::logic_error("synthesize: unexpected quadratic term count");
  }
  for (auto m : anf.monomials_of_degree(1)) {
    gates.push_back(SigmaZ{anf.variables(m)[0]});
  }
  sort_gates(gates);

  Decomposition dec{gates, type_class_of(gates), f};
  if (!verify(dec)) {
    throw std::logic_error("synthesize: decomposition of " + f.to_string() + " does not verify");
  }
  return dec;
}

/// Exhaustive search over every σz subset, every CP (or none) and every
/// two-target CP (or none): 8 * 4 * 4 candidates. Returns the fewest-gate
/// match, ties broken by comparing sorted gate keys lexicographically.
inline Decomposition brute_force_synthesize(const TruthTable& f) {
  detail::check_synthesizable(f);
  const std::array<std::optional<GateOp>, 4> cps{std::nullopt, GateOp{Cp{1, 2}}, GateOp{Cp{1, 3}},
                                                 GateOp{Cp{2, 3}}};
  const std::array<std::optional<GateOp>, 4> twos{std::nullopt, GateOp{TwoTargetCp{1, 2, 3}},
                                                  GateOp{TwoTargetCp{2, 1, 3}},
                                                  GateOp{TwoTargetCp{3, 1, 2}}};
  auto target = oracle_matrix(f).diagonal;

  std::optional<std::vector<GateOp>> best;
  auto key_of = [](const std::vector<GateOp>& gates) {
    std::vector<std::tuple<int, int, int, int>> keys;
    for (const auto& g : gates) {
      keys.push_back(gate_sort_key(g));
    }
    return std::pair{gates.size(), keys};
  };

  for (unsigned zmask = 0; zmask < 8; ++zmask) {
    for (const auto& cp : cps) {
      for (const auto& two : twos) {
        std::vector<GateOp> gates;
        if (two) gates.push_back(*two);
        if (cp) gates.push_back(*cp);
        for (int q = 1; q <= kNumQubits; ++q) {
          if (zmask & (1U << (q - 1))) {
            gates.push_back(SigmaZ{q});
          }
        }
        auto d = diagonal_product(gates);
        if (!std::equal(d.begin(), d.end(), target.begin())) {
          continue;
        }
        sort_gates(gates);
        if (!best || key_of(gates) < key_of(*best)) {
          best = gates;
        }
      }
    }
  }
  if (!best) {
    throw std::logic_error("brute_force_synthesize: no decomposition for " + f.to_string());
  }
  return Decomposition{*best, type_class_of(*best), f};
}

/// Synthesizes every canonical balanced function and counts type classes.
inline std::map<int, int> classify_all() {
  std::map<int, int> counts{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
  for (const auto& f : canonical_balanced_set(kNumQubits)) {
    counts[synthesize(f).type_class] += 1;
  }
  return counts;
}

/// The full reconstructed decomposition table, in canonical order.
inline std::vector<Decomposition> decomposition_table() {
  std::vector<Decomposition> out;
  for (const auto& f : canonical_balanced_set(kNumQubits)) {
    out.push_back(synthesize(f));
  }
  return out;
}

inline std::string gate_string(const std::vector<GateOp>& gates) {
  std::string s;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (i > 0) s += " ";
    s += to_string(gates[i]);
  }
  return s;
}

}  // namespace djqed
