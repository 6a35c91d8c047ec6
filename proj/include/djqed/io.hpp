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

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "djqed/master_equation.hpp"
#include "djqed/pulse.hpp"
#include "djqed/synth.hpp"

namespace djqed {

using json = nlohmann::json;

inline json to_json(const Decomposition& dec) {
  json gates = json::array();
  for (const auto& g : dec.gates) gates.push_back(to_string(g));
  return json{{"truth_table", dec.target.to_string()},
              {"anf", anf_of(dec.target).to_string()},
              {"gates", gates},
              {"type", dec.type_class}};
}

inline Decomposition decomposition_from_json(const json& j) {
  Decomposition dec;
  dec.target = TruthTable::parse(j.at("truth_table").get<std::string>());
  for (const auto& g : j.at("gates")) dec.gates.push_back(parse_gate(g.get<std::string>()));
  dec.type_class = j.at("type").get<int>();
  return dec;
}

inline json table_to_json(const std::vector<Decomposition>& table) {
  json rows = json::array();
  for (const auto& d : table) rows.push_back(to_json(d));
  return rows;
}

inline std::vector<Decomposition> table_from_json(const json& j) {
  std::vector<Decomposition> out;
  for (const auto& row : j) out.push_back(decomposition_from_json(row));
  return out;
}

/// Aligned text rendering, one row per function.
inline std::string table_to_text(const std::vector<Decomposition>& table) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "#" << std::setw(11) << "f" << std::setw(34) << "ANF"
     << std::setw(36) << "gates" << "type\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& d = table[i];
    os << std::left << std::setw(4) << (i + 1) << std::setw(11) << d.target.to_string()
       << std::setw(34) << anf_of(d.target).to_string() << std::setw(36) << gate_string(d.gates)
       << d.type_class << "\n";
  }
  return os.str();
}

inline json to_json(const Schedule& s) {
  json items = json::array();
  for (const auto& item : s.items) {
    if (const auto* seg = std::get_if<PulseSegment>(&item)) {
      items.push_back({{"kind", "segment"},
                       {"qutrit", seg->active_qutrit},
                       {"transition", to_string(seg->transition)},
                       {"duration_ns", seg->duration * 1e9},
                       {"label", seg->label}});
    } else {
      const auto& layer = std::get<InstantaneousLayer>(item);
      json qutrits = json::array();
      for (const auto& g : layer.gates) {
        qutrits.push_back(std::visit(
            detail::overloaded{[](const SigmaZ& z) { return z.qubit; },
                               [](const Hadamard& h) { return h.qubit; },
                               [](const auto&) { return 0; }},
            g));
      }
      items.push_back({{"kind", "layer"},
                       {"qutrit", qutrits},
                       {"transition", nullptr},
                       {"duration_ns", 0.0},
                       {"label", layer.label}});
    }
  }
  return items;
}

inline constexpr const char* kResultsCsvHeader =
    "op,b0,b1,fidelity,trace_error,min_eigenvalue,cutoff_population,wall_time_s";

/// Writes the sweep table. With `include_timing` false the wall-time column
/// is written as 0 so that repeated runs are byte-identical.
inline void write_results_csv(std::ostream& os, const std::vector<SimResult>& results,
                              bool include_timing = true) {
  os << kResultsCsvHeader << "\n";
  std::ostringstream line;
  for (const auto& r : results) {
    line.str("");
    line << std::scientific << std::setprecision(12);
    line << to_string(r.op) << "," << r.b0 << "," << r.b1 << "," << r.fidelity << ","
         << r.trace_error << "," << r.min_eigenvalue << "," << r.cutoff_population << ","
         << (include_timing ? r.wall_time_s : 0.0);
    os << line.str() << "\n";
  }
}

}  // namespace djqed
