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
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "djqed/circuit.hpp"
#include "djqed/hilbert.hpp"
#include "djqed/linalg.hpp"
#include "djqed/params.hpp"
#include "djqed/pulse.hpp"

namespace djqed {

/// Integrator settings. Without an explicit `dt` the step is chosen so that
/// the fastest angular frequency advances by kMaxPhasePerStep per step.
struct SimConfig {
  static constexpr double kMaxPhasePerStep = 0.05;

  int photon_cutoff = 3;
  std::optional<double> dt;

  Layout layout() const { return Layout{3, photon_cutoff}; }

  double step_for(const CouplingParams& p) const {
    return dt ? *dt : kMaxPhasePerStep / p.max_angular_frequency();
  }

  void validate(const CouplingParams& p) const {
    if (photon_cutoff < 3) {
      throw std::invalid_argument("photon_cutoff must be at least 3");
    }
    double step = step_for(p);
    if (!(step > 0.0)) {
      throw std::invalid_argument("integration step must be positive");
    }
    if (step * p.max_angular_frequency() > kMaxPhasePerStep * (1.0 + 1e-9)) {
      throw std::invalid_argument("integration step too large: dt * max frequency = " +
                                  std::to_string(step * p.max_angular_frequency()) +
                                  " rad exceeds 0.05 rad");
    }
  }
};

/// H(t) = static_part + e^{-i delta t} rotating + h.c. of the rotating term.
/// The clock restarts at zero for every segment.
struct SegmentHamiltonian {
  ComplexMatrix static_part;
  ComplexMatrix rotating;
  double delta = 0.0;

  ComplexMatrix at(double t) const {
    Complex phase = std::exp(-kI * delta * t);
    return static_part + phase * rotating + std::conj(phase) * rotating.adjoint();
  }
};

/// Resonant coupling on the active transition plus the off-resonant coupling
/// of the same qutrit's other transition:
///   G01: g01 a† S01 + g12' e^{-i δ12 t} a† S12 + h.c.
///   E12: g12 a† S12 + g01' e^{-i δ01 t} a† S01 + h.c.
/// with S01 = |0><1| and S12 = |1><2| on the active qutrit.
inline SegmentHamiltonian segment_hamiltonian(const PulseSegment& seg, const CouplingParams& p,
                                              const Layout& layout) {
  ComplexMatrix a_dag = cavity_annihilation(layout).adjoint();
  ComplexMatrix lower01 = a_dag * qutrit_operator(layout, seg.active_qutrit, level_operator(0, 1));
  ComplexMatrix lower12 = a_dag * qutrit_operator(layout, seg.active_qutrit, level_operator(1, 2));
  SegmentHamiltonian h;
  if (seg.transition == Transition::kG01) {
    h.static_part = p.g01 * (lower01 + lower01.adjoint());
    h.rotating = p.g12_spurious * lower12;
    h.delta = p.delta12();
  } else {
    h.static_part = p.g12 * (lower12 + lower12.adjoint());
    h.rotating = p.g01_spurious * lower01;
    h.delta = p.delta01();
  }
  return h;
}

inline ComplexMatrix build_segment_hamiltonian(const PulseSegment& seg, double t,
                                               const CouplingParams& p, const Layout& layout) {
  if (t < 0.0 || t > seg.duration * (1.0 + 1e-12)) {
    throw std::invalid_argument("build_segment_hamiltonian: t outside the segment");
  }
  return segment_hamiltonian(seg, p, layout).at(t);
}

/// Collapse operator with its rate.
struct JumpOperator {
  double rate;
  ComplexMatrix op;
};

/// Cavity decay, the three qutrit relaxation paths and the two dephasing
/// channels, the latter written as Lindblad terms with Λ = |2><2| and |1><1|.
/// Zero-rate channels are omitted.
inline std::vector<JumpOperator> jump_operators(const NoiseParams& noise, const Layout& layout) {
  noise.validate();
  std::vector<JumpOperator> jumps;
  if (noise.kappa > 0.0) jumps.push_back({noise.kappa, cavity_annihilation(layout)});
  for (int j = 1; j <= layout.n_qutrits; ++j) {
    const std::pair<double, ComplexMatrix> channels[] = {
        {noise.gamma21, level_operator(1, 2)},    {noise.gamma20, level_operator(0, 2)},
        {noise.gamma10, level_operator(0, 1)},    {noise.gamma_phi2, level_operator(2, 2)},
        {noise.gamma_phi1, level_operator(1, 1)},
    };
    for (const auto& [rate, op] : channels) {
      if (rate > 0.0) jumps.push_back({rate, qutrit_operator(layout, j, op)});
    }
  }
  return jumps;
}

/// dρ/dt = -i[H, ρ] + Σ_k rate_k (Λ ρ Λ† - Λ†Λ ρ / 2 - ρ Λ†Λ / 2), evaluated
/// term by term with dense products.
inline ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                                  const NoiseParams& noise, const Layout& layout) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols() ||
      static_cast<std::size_t>(rho.rows()) != layout.dim()) {
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  }
  ComplexMatrix out = -kI * (h * rho - rho * h);
  for (const auto& [rate, op] : jump_operators(noise, layout)) {
    ComplexMatrix ldl = op.adjoint() * op;
    out += rate * (op * rho * op.adjoint() - 0.5 * ldl * rho - 0.5 * rho * ldl);
  }
  return out;
}

inline ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const ComplexMatrix& h,
                                  const NoiseParams& noise, const Layout& layout) {
  return lindblad_rhs(rho.matrix(), h, noise, layout);
}

/// Linear map on column-major vec(ρ) stored as merged (dst, src, coef)
/// triplets sorted by destination: out[dst] += coef * in[src].
class Superoperator {
 public:
  Superoperator() = default;

  /// ρ -> left ρ right; only nonzero entries of the factors contribute.
  void add_sandwich(const ComplexMatrix& left, const ComplexMatrix& right, Complex scale) {
    const Eigen::Index d = left.rows();
    std::vector<std::pair<Eigen::Index, Eigen::Index>> lnz, rnz;
    for (Eigen::Index c = 0; c < d; ++c) {
      for (Eigen::Index r = 0; r < d; ++r) {
        if (left(r, c) != Complex{}) lnz.emplace_back(r, c);
        if (right(r, c) != Complex{}) rnz.emplace_back(r, c);
      }
    }
    // (left ρ right)(r, c) = Σ left(r, k) ρ(k, m) right(m, c)
    for (auto [r, k] : lnz) {
      for (auto [m, c] : rnz) {
        pending_.push_back({r + c * d, k + m * d, scale * left(r, k) * right(m, c)});
      }
    }
  }

  /// ρ -> -i (h ρ - ρ h).
  void add_commutator(const ComplexMatrix& h) {
    ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
    add_sandwich(h, id, -kI);
    add_sandwich(id, h, kI);
  }

  /// ρ -> -i (k ρ - ρ k†), the evolution under an effective non-hermitian k.
  void add_effective_hamiltonian(const ComplexMatrix& k) {
    ComplexMatrix id = ComplexMatrix::Identity(k.rows(), k.cols());
    add_sandwich(k, id, -kI);
    add_sandwich(id, k.adjoint(), kI);
  }

  /// Merges duplicate (dst, src) pairs and sorts by destination.
  void finalize() {
    std::sort(pending_.begin(), pending_.end(), [](const Entry& a, const Entry& b) {
      return std::pair{a.dst, a.src} < std::pair{b.dst, b.src};
    });
    dst_.clear();
    src_.clear();
    coef_.clear();
    for (std::size_t i = 0; i < pending_.size();) {
      Entry e = pending_[i];
      std::size_t j = i + 1;
      for (; j < pending_.size() && pending_[j].dst == e.dst && pending_[j].src == e.src; ++j) {
        e.coef += pending_[j].coef;
      }
      if (e.coef != Complex{}) {
        dst_.push_back(static_cast<std::int32_t>(e.dst));
        src_.push_back(static_cast<std::int32_t>(e.src));
        coef_.push_back(e.coef);
      }
      i = j;
    }
    pending_.clear();
    pending_.shrink_to_fit();
  }

  bool empty() const { return coef_.empty(); }
  std::size_t nonzeros() const { return coef_.size(); }

  /// out += scale * S(in)
  void apply_add(const Complex* in, Complex* out, Complex scale = Complex{1.0, 0.0}) const {
    // Plain real arithmetic: std::complex multiplication carries NaN/Inf
    // recovery branches that dominate this loop.
    const auto* x = reinterpret_cast<const double*>(in);
    auto* y = reinterpret_cast<double*>(out);
    const double sr = scale.real();
    const double si = scale.imag();
    const std::size_t n = coef_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double cr = coef_[i].real() * sr - coef_[i].imag() * si;
      const double ci = coef_[i].real() * si + coef_[i].imag() * sr;
      const double xr = x[2 * src_[i]];
      const double xi = x[2 * src_[i] + 1];
      y[2 * dst_[i]] += cr * xr - ci * xi;
      y[2 * dst_[i] + 1] += cr * xi + ci * xr;
    }
  }


 private:
  struct Entry {
    Eigen::Index dst;
    Eigen::Index src;
    Complex coef;
  };
  std::vector<Entry> pending_;
  std::vector<std::int32_t> dst_;
  std::vector<std::int32_t> src_;
  std::vector<Complex> coef_;
};

/// The master-equation generator of one segment, precompiled:
///   L(t) = S_static + e^{-i delta t} S_rot + e^{i delta t} S_rot_adj
/// where S_static holds -i[H0, .], the effective decay -(1/2){Σ Λ†Λ, .} and
/// the jump terms Σ Λ . Λ†.
class LindbladGenerator {
 public:
  LindbladGenerator(const SegmentHamiltonian& h, const NoiseParams& noise, const Layout& layout)
      : dim_(static_cast<Eigen::Index>(layout.dim())), delta_(h.delta) {
    ComplexMatrix effective = h.static_part;
    std::vector<JumpOperator> jumps = jump_operators(noise, layout);
    for (const auto& [rate, op] : jumps) {
      effective -= 0.5 * kI * rate * (op.adjoint() * op);
    }
    static_.add_effective_hamiltonian(effective);
    for (const auto& [rate, op] : jumps) {
      static_.add_sandwich(op, op.adjoint(), rate);
    }
    static_.finalize();
    if (h.rotating.cwiseAbs().maxCoeff() > 0.0) {
      rotating_.add_commutator(h.rotating);
      rotating_.finalize();
      rotating_adj_.add_commutator(h.rotating.adjoint());
      rotating_adj_.finalize();
    }
  }

  /// out = L(t) rho; `out` must be preallocated with the same shape.
  void apply(const ComplexMatrix& rho, double t, ComplexMatrix& out) const {
    out.setZero();
    static_.apply_add(rho.data(), out.data());
    if (!rotating_.empty()) {
      Complex phase = std::exp(-kI * delta_ * t);
      rotating_.apply_add(rho.data(), out.data(), phase);
      rotating_adj_.apply_add(rho.data(), out.data(), std::conj(phase));
    }
  }

  ComplexMatrix operator()(const ComplexMatrix& rho, double t) const {
    ComplexMatrix out(dim_, dim_);
    apply(rho, t, out);
    return out;
  }

  std::size_t nonzeros() const {
    return static_.nonzeros() + rotating_.nonzeros() + rotating_adj_.nonzeros();
  }

 private:
  Eigen::Index dim_;
  double delta_;
  Superoperator static_;
  Superoperator rotating_;
  Superoperator rotating_adj_;
};

struct SegmentOutcome {
  DensityMatrix rho;
  std::size_t steps = 0;
  double trace_error = 0.0;
  /// Largest top-Fock-level population seen at any step.
  double cutoff_population = 0.0;
  double excitation_drift = 0.0;
  bool cutoff_flagged = false;
};

inline constexpr double kCutoffPopulationLimit = 1e-6;

namespace detail {

inline double expectation_diag(const ComplexMatrix& diag_op, const ComplexMatrix& rho) {
  return (diag_op.diagonal().cwiseProduct(rho.diagonal())).sum().real();
}

}  // namespace detail

/// Fixed-step RK4 over one segment. The step count is ceil(duration / dt)
/// so the segment ends exactly at its duration. ρ is re-hermitized after
/// every step; the trace is left alone.
inline SegmentOutcome evolve_segment(const DensityMatrix& rho, const PulseSegment& seg,
                                     const CouplingParams& p, const NoiseParams& noise,
                                     const SimConfig& cfg) {
  cfg.validate(p);
  Layout layout = cfg.layout();
  if (rho.dim() != layout.dim()) {
    throw std::invalid_argument("evolve_segment: state dimension does not match the layout");
  }
  if (!(seg.duration > 0.0)) {
    throw std::invalid_argument("evolve_segment: segment duration must be positive");
  }

  LindbladGenerator rhs(segment_hamiltonian(seg, p, layout), noise, layout);
  ComplexMatrix excitation = excitation_operator(layout);
  auto steps = static_cast<std::size_t>(std::ceil(seg.duration / cfg.step_for(p) - 1e-9));
  steps = std::max<std::size_t>(steps, 1);
  const double h = seg.duration / static_cast<double>(steps);

  const auto d = static_cast<Eigen::Index>(layout.dim());
  ComplexMatrix r = rho.matrix();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
  double n_start = detail::expectation_diag(excitation, r);
  double cutoff_pop = photon_population(layout, r, layout.photon_cutoff);
  for (std::size_t s = 0; s < steps; ++s) {
    double t = h * static_cast<double>(s);
    rhs.apply(r, t, k1);
    stage = r + (0.5 * h) * k1;
    rhs.apply(stage, t + 0.5 * h, k2);
    stage = r + (0.5 * h) * k2;
    rhs.apply(stage, t + 0.5 * h, k3);
    stage = r + h * k3;
    rhs.apply(stage, t + h, k4);
    r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    stage = r.adjoint();
    r = 0.5 * (r + stage);
    if (!r.allFinite()) {
      throw NumericalError("evolve_segment: non-finite density matrix in \"" + seg.label +
                           "\"; reduce dt");
    }
    cutoff_pop = std::max(cutoff_pop, photon_population(layout, r, layout.photon_cutoff));
  }

  SegmentOutcome out{DensityMatrix::unchecked(std::move(r))};
  out.steps = steps;
  out.trace_error = out.rho.trace_error();
  out.cutoff_population = cutoff_pop;
  out.cutoff_flagged = cutoff_pop > kCutoffPopulationLimit;
  out.excitation_drift =
      std::abs(detail::expectation_diag(excitation, out.rho.matrix()) - n_start);
  return out;
}

/// Unitary of an instantaneous layer on the qutrit register ⊗ cavity.
inline ComplexMatrix layer_unitary(const InstantaneousLayer& layer, const Layout& layout) {
  if (layout.n_qutrits != 3) {
    throw std::invalid_argument("layer_unitary: layers act on three qutrits");
  }
  ComplexMatrix u = ComplexMatrix::Identity(27, 27);
  for (const auto& g : layer.gates) {
    u = qutrit_gate_matrix(g) * u;
  }
  return embed_qutrit_register(layout, u);
}

struct ScheduleOutcome {
  DensityMatrix rho;
  std::size_t steps = 0;
  double cutoff_population = 0.0;
  /// Largest per-segment change of the mean excitation number.
  double max_excitation_drift = 0.0;
  bool cutoff_flagged = false;
};

/// Runs every item of a schedule in order: layers as instantaneous unitaries,
/// segments through the master equation.
inline ScheduleOutcome run_schedule(const Schedule& schedule, const DensityMatrix& initial,
                                    const CouplingParams& p, const NoiseParams& noise,
                                    const SimConfig& cfg) {
  Layout layout = cfg.layout();
  ScheduleOutcome out{initial};
  for (const auto& item : schedule.items) {
    if (const auto* layer = std::get_if<InstantaneousLayer>(&item)) {
      out.rho = apply_unitary(layer_unitary(*layer, layout), out.rho);
      continue;
    }
    auto seg = evolve_segment(out.rho, std::get<PulseSegment>(item), p, noise, cfg);
    out.rho = std::move(seg.rho);
    out.steps += seg.steps;
    out.cutoff_population = std::max(out.cutoff_population, seg.cutoff_population);
    out.max_excitation_drift = std::max(out.max_excitation_drift, seg.excitation_drift);
    out.cutoff_flagged = out.cutoff_flagged || seg.cutoff_flagged;
  }
  return out;
}

struct SimResult {
  JointOpId op = JointOpId::kU1;
  double b0 = 0.0;
  double b1 = 0.0;
  double fidelity = 0.0;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double cutoff_population = 0.0;
  double excitation_drift = 0.0;
  bool cutoff_flagged = false;
  std::size_t steps = 0;
  double wall_time_s = 0.0;
};

/// Ideal output of a joint operation on qutrits ⊗ cavity vacuum.
inline StateVector ideal_joint_state(JointOpId op, const Layout& layout) {
  return embed_qubit_state(layout, ideal_joint_output(op));
}

/// Starts from |000>|0>_c, runs the compiled joint operation and scores the
/// final state against the ideal output.
inline SimResult run_joint_op(JointOpId op, const CouplingParams& p, const NoiseParams& noise,
                              const SimConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  p.validate();
  noise.validate();
  cfg.validate(p);
  Layout layout = cfg.layout();

  auto initial = DensityMatrix::pure(StateVector::basis(layout.dim(), 0));
  auto outcome = run_schedule(compile_joint_op(op, p), initial, p, noise, cfg);

  SimResult r;
  r.op = op;
  r.b0 = p.b0;
  r.b1 = p.b1;
  r.fidelity = state_fidelity(ideal_joint_state(op, layout), outcome.rho);
  r.trace_error = outcome.rho.trace_error();
  r.hermiticity_error = outcome.rho.hermiticity_error();
  r.min_eigenvalue = outcome.rho.min_eigenvalue();
  r.cutoff_population = outcome.cutoff_population;
  r.excitation_drift = outcome.max_excitation_drift;
  r.cutoff_flagged = outcome.cutoff_flagged;
  r.steps = outcome.steps;
  r.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// One independent run per (op, b0), op-major. Points are distributed over
/// `threads` workers (0 = hardware concurrency); results are stored by index
/// so the output order and values do not depend on scheduling.
inline std::vector<SimResult> sweep_b0(const std::vector<JointOpId>& ops,
                                       const std::vector<double>& b0_values,
                                       const CouplingParams& base, const NoiseParams& noise,
                                       const SimConfig& cfg, unsigned threads = 0) {
  if (ops.empty()) {
    throw std::invalid_argument("sweep_b0: no operations given");
  }
  if (b0_values.empty()) {
    throw std::invalid_argument("sweep_b0: b0 list is empty");
  }
  for (double b0 : b0_values) {
    if (!(b0 > 0.0)) {
      throw std::invalid_argument("sweep_b0: every b0 must be positive");
    }
  }
  std::vector<std::pair<JointOpId, double>> points;
  for (auto op : ops) {
    for (double b0 : b0_values) points.emplace_back(op, b0);
  }
  std::vector<std::optional<SimResult>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        CouplingParams p = base;
        p.b0 = points[i].second;
        results[i] = run_joint_op(points[i].first, p, noise, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<SimResult> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(*results[i]);
  }
  return out;
}

}  // namespace djqed
