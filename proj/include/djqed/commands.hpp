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
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "djqed/circuit.hpp"
#include "djqed/config.hpp"
#include "djqed/io.hpp"
#include "djqed/master_equation.hpp"
#include "djqed/pulse.hpp"
#include "djqed/synth.hpp"

namespace djqed::cli {

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kNumericalFailure = 2 };

/// Runs `body`, mapping exceptions to exit codes and printing them to `err`.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write \"" + path + "\"");
  f << content;
}

// ---------------------------------------------------------------- synth

inline const std::map<int, int>& expected_type_counts() {
  static const std::map<int, int> counts{{1, 7}, {2, 12}, {3, 12}, {4, 4}};
  return counts;
}

struct SynthOptions {
  std::optional<std::string> json_path;
  bool json_to_stdout = false;
  /// Replaceable for fault-injection tests.
  std::function<Decomposition(const TruthTable&)> synthesizer = synthesize;
};

inline json synth_report_json(const std::vector<Decomposition>& table,
                              const std::map<int, int>& counts) {
  json c = json::object();
  for (const auto& [type, n] : counts) c[std::to_string(type)] = n;
  return json{{"functions", table_to_json(table)}, {"type_counts", c}};
}

/// Builds and checks the 35-row table: exact diagonal equality, agreement
/// with the exhaustive search, and the 7/12/12/4 type split.
inline int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<Decomposition> table;
    std::map<int, int> counts{{1, 0}, {2, 0}, {3, 0}, {4, 0}};
    bool ok = true;
    for (const auto& f : canonical_balanced_set(kNumQubits)) {
      Decomposition dec = opts.synthesizer(f);
      if (!(dec.target == f) || !verify(dec)) {
        err << "verification failed for " << f.to_string() << ": " << gate_string(dec.gates) << "\n";
        ok = false;
      }
      Decomposition oracle = brute_force_synthesize(f);
      if (oracle.gates != dec.gates) {
        err << "exhaustive search disagrees for " << f.to_string() << ": "
            << gate_string(oracle.gates) << " vs " << gate_string(dec.gates) << "\n";
        ok = false;
      }
      counts[dec.type_class] += 1;
      table.push_back(std::move(dec));
    }
    if (table.size() != 35) {
      err << "expected 35 functions, got " << table.size() << "\n";
      ok = false;
    }
    if (counts != expected_type_counts()) {
      err << "type counts do not match 7/12/12/4\n";
      ok = false;
    }

    json report = synth_report_json(table, counts);
    if (opts.json_path) write_text_file(*opts.json_path, report.dump(2) + "\n");
    if (opts.json_to_stdout) {
      out << report.dump(2) << "\n";
    } else {
      out << table_to_text(table);
      out << "type counts:";
      for (const auto& [type, n] : counts) out << " " << type << ":" << n;
      out << "\n";
    }
    return ok ? kOk : kValidationFailure;
  });
}

// ---------------------------------------------------------------- dj

struct DjOptions {
  std::optional<std::string> function;
  bool all = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::optional<std::string> out_path;
};

/// Every 3-bit function satisfying the promise, in truth-table order.
inline std::vector<TruthTable> promise_functions() {
  std::vector<TruthTable> fs;
  for (std::uint64_t bits = 0; bits < 256; ++bits) {
    TruthTable f(3, bits);
    if (is_constant(f) || is_balanced(f)) fs.push_back(f);
  }
  std::sort(fs.begin(), fs.end(),
            [](const TruthTable& a, const TruthTable& b) { return a.table_value() < b.table_value(); });
  return fs;
}

inline std::string dj_table_csv() {
  std::ostringstream os;
  os << "truth_table,p000,decision\n";
  for (const auto& f : promise_functions()) {
    auto d = run_dj(f);
    os << f.to_string() << "," << std::scientific << std::setprecision(12) << d.p000() << ","
       << to_string(dj_decision(d)) << "\n";
  }
  return os.str();
}

inline int cmd_dj(const DjOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::string text;
    if (opts.all) {
      text = dj_table_csv();
    } else {
      if (!opts.function) throw std::invalid_argument("dj: give --function <8 bits> or --all");
      if (opts.function->size() != 8) {
        throw std::invalid_argument("dj: the function must be an 8-character 0/1 string");
      }
      TruthTable f = TruthTable::parse(*opts.function);
      auto d = run_dj(f);
      std::ostringstream os;
      os << "function " << f.to_string() << "\n";
      for (std::size_t x = 0; x < 8; ++x) {
        os << "|" << ((x >> 2) & 1) << ((x >> 1) & 1) << (x & 1) << ">  " << std::fixed
           << std::setprecision(12) << d.probabilities[x] << "\n";
      }
      if (opts.shots > 0) {
        auto counts = sample_shots(d, opts.shots, opts.seed);
        os << "shots " << opts.shots << " (seed " << opts.seed << "):";
        for (auto c : counts) os << " " << c;
        os << "\n";
      }
      os << "decision: " << to_string(dj_decision(d)) << "\n";
      text = os.str();
    }
    if (opts.out_path) {
      write_text_file(*opts.out_path, text);
    } else {
      out << text;
    }
    return kOk;
  });
}

// ---------------------------------------------------------------- pulse

inline int cmd_pulse(const std::string& op_name, double g_over_2pi_mhz,
                     const std::optional<std::string>& out_path, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    JointOpId op = parse_joint_op(op_name);
    RunConfig cfg;
    cfg.g_over_2pi_mhz = g_over_2pi_mhz;
    if (!(g_over_2pi_mhz > 0.0)) throw ConfigError("g_over_2pi_mhz", "must be positive");
    std::string text = to_json(compile_joint_op(op, cfg.couplings(24.0))).dump(2) + "\n";
    if (out_path) {
      write_text_file(*out_path, text);
    } else {
      out << text;
    }
    return kOk;
  });
}

// ---------------------------------------------------------------- sweep / run

struct ReferenceFidelity {
  JointOpId op;
  double value;
};

/// Reported fidelities at b0 = 24, b1 = 10.
inline constexpr std::array<ReferenceFidelity, 3> kReferenceFidelities{
    {{JointOpId::kU1, 0.991}, {JointOpId::kU2, 0.980}, {JointOpId::kU3, 0.972}}};

inline void print_reference_comparison(const std::vector<SimResult>& results, std::ostream& os) {
  bool header = false;
  for (const auto& r : results) {
    if (r.b0 != 24.0) continue;
    for (const auto& ref : kReferenceFidelities) {
      if (ref.op != r.op) continue;
      if (!header) {
        os << "b0 = 24 comparison (op, simulated, reference, difference):\n";
        header = true;
      }
      os << "  " << to_string(r.op) << "  " << std::fixed << std::setprecision(4) << r.fidelity
         << "  " << ref.value << "  " << std::showpos << (r.fidelity - ref.value)
         << std::noshowpos << "\n";
    }
  }
}

inline void report_flags(const std::vector<SimResult>& results, std::ostream& err) {
  for (const auto& r : results) {
    if (r.cutoff_flagged) {
      err << "warning: " << to_string(r.op) << " at b0 = " << r.b0
          << ": top Fock level population " << std::scientific << r.cutoff_population
          << " exceeds 1e-6\n";
    }
  }
}

inline int cmd_sweep(const RunConfig& config, bool deterministic, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    std::vector<JointOpId> ops(kAllJointOps.begin(), kAllJointOps.end());
    auto results = sweep_b0(ops, config.b0, config.couplings(config.b0.front()),
                            config.noise.rates(), config.sim_config());
    std::ostringstream csv;
    write_results_csv(csv, results, !deterministic);
    if (config.output_path.empty()) {
      out << csv.str();
      print_reference_comparison(results, err);
    } else {
      write_text_file(config.output_path, csv.str());
      print_reference_comparison(results, out);
    }
    report_flags(results, err);
    return kOk;
  });
}

/// Single operating point: the config must hold exactly one b0.
inline int cmd_run(const RunConfig& config, const std::optional<std::string>& op_name,
                   bool deterministic, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.b0.size() != 1) throw ConfigError("b0", "run takes exactly one value");
    std::vector<JointOpId> ops(kAllJointOps.begin(), kAllJointOps.end());
    if (op_name) ops = {parse_joint_op(*op_name)};
    std::vector<SimResult> results;
    for (auto op : ops) {
      results.push_back(run_joint_op(op, config.couplings(config.b0.front()), config.noise.rates(),
                                     config.sim_config()));
    }
    std::ostringstream csv;
    write_results_csv(csv, results, !deterministic);
    if (config.output_path.empty()) {
      out << csv.str();
    } else {
      write_text_file(config.output_path, csv.str());
    }
    print_reference_comparison(results, config.output_path.empty() ? err : out);
    report_flags(results, err);
    return kOk;
  });
}

}  // namespace djqed::cli
