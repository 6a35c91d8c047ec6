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

#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "djqed/master_equation.hpp"
#include "djqed/params.hpp"

namespace djqed {

/// Validation failure naming the offending field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Lifetimes (inverse rates) in microseconds.
struct NoiseLifetimesUs {
  double kappa_inv_us = 5.0;
  double gamma21_inv_us = 15.0;
  double gamma20_inv_us = 150.0;
  double gamma10_inv_us = 20.0;
  double gamma_phi2_inv_us = 10.0;
  double gamma_phi1_inv_us = 10.0;

  NoiseParams rates() const {
    return NoiseParams::from_inverse_us(kappa_inv_us, gamma21_inv_us, gamma20_inv_us,
                                        gamma10_inv_us, gamma_phi2_inv_us, gamma_phi1_inv_us);
  }

  friend bool operator==(const NoiseLifetimesUs&, const NoiseLifetimesUs&) = default;
};

inline std::vector<double> default_b0_sweep() {
  std::vector<double> b0;
  for (int v = 6; v <= 30; v += 2) b0.push_back(v);
  return b0;
}

/// Batch configuration. Field names in the JSON form carry their units.
struct RunConfig {
  double g_over_2pi_mhz = 15.0;
  std::vector<double> b0 = default_b0_sweep();
  double b1 = 10.0;
  NoiseLifetimesUs noise;
  int photon_cutoff = 3;
  std::optional<double> dt_override_ns;
  std::string output_path;

  void validate() const {
    if (!(g_over_2pi_mhz > 0.0)) throw ConfigError("g_over_2pi_mhz", "must be positive");
    if (b0.empty()) throw ConfigError("b0", "sweep list is empty");
    for (std::size_t i = 0; i < b0.size(); ++i) {
      if (!(b0[i] > 0.0)) {
        throw ConfigError("b0[" + std::to_string(i) + "]", "must be positive");
      }
    }
    if (!(b1 > 0.0)) throw ConfigError("b1", "must be positive");
    const std::pair<const char*, double> lifetimes[] = {
        {"noise.kappa_inv_us", noise.kappa_inv_us},
        {"noise.gamma21_inv_us", noise.gamma21_inv_us},
        {"noise.gamma20_inv_us", noise.gamma20_inv_us},
        {"noise.gamma10_inv_us", noise.gamma10_inv_us},
        {"noise.gamma_phi2_inv_us", noise.gamma_phi2_inv_us},
        {"noise.gamma_phi1_inv_us", noise.gamma_phi1_inv_us},
    };
    for (const auto& [name, value] : lifetimes) {
      if (!(value > 0.0)) throw ConfigError(name, "must be positive");
    }
    if (photon_cutoff < 3) throw ConfigError("photon_cutoff", "must be at least 3");
    if (dt_override_ns && !(*dt_override_ns > 0.0)) {
      throw ConfigError("dt_override_ns", "must be positive");
    }
    for (double v : b0) {
      try {
        sim_config().validate(couplings(v));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("dt_override_ns", e.what());
      }
    }
  }

  CouplingParams couplings(double b0_value) const {
    return CouplingParams::transmon(g_over_2pi_mhz * 1e6, b0_value, b1);
  }

  SimConfig sim_config() const {
    SimConfig cfg;
    cfg.photon_cutoff = photon_cutoff;
    if (dt_override_ns) cfg.dt = *dt_override_ns * 1e-9;
    return cfg;
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["g_over_2pi_mhz"] = c.g_over_2pi_mhz;
  j["b0"] = c.b0;
  j["b1"] = c.b1;
  j["noise"] = {{"kappa_inv_us", c.noise.kappa_inv_us},
                {"gamma21_inv_us", c.noise.gamma21_inv_us},
                {"gamma20_inv_us", c.noise.gamma20_inv_us},
                {"gamma10_inv_us", c.noise.gamma10_inv_us},
                {"gamma_phi2_inv_us", c.noise.gamma_phi2_inv_us},
                {"gamma_phi1_inv_us", c.noise.gamma_phi1_inv_us}};
  j["photon_cutoff"] = c.photon_cutoff;
  j["dt_override_ns"] = c.dt_override_ns ? nlohmann::json(*c.dt_override_ns) : nlohmann::json();
  j["output_path"] = c.output_path;
  return j;
}

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                           const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError(prefix + key, "unknown field");
  }
}

template <class T>
T field(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(path, "has the wrong type");
  }
}

}  // namespace detail

/// Missing fields take their defaults; unknown fields are rejected. `b0`
/// may be a single number or a list.
inline RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  detail::reject_unknown(j,
                         {"g_over_2pi_mhz", "b0", "b1", "noise", "photon_cutoff",
                          "dt_override_ns", "output_path"},
                         "");
  RunConfig c;
  c.g_over_2pi_mhz = detail::field(j, "g_over_2pi_mhz", "g_over_2pi_mhz", c.g_over_2pi_mhz);
  if (j.contains("b0")) {
    if (j["b0"].is_number()) {
      c.b0 = {j["b0"].get<double>()};
    } else {
      c.b0 = detail::field<std::vector<double>>(j, "b0", "b0", {});
    }
  }
  c.b1 = detail::field(j, "b1", "b1", c.b1);
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    if (!n.is_object()) throw ConfigError("noise", "must be an object");
    detail::reject_unknown(n,
                           {"kappa_inv_us", "gamma21_inv_us", "gamma20_inv_us", "gamma10_inv_us",
                            "gamma_phi2_inv_us", "gamma_phi1_inv_us"},
                           "noise.");
    auto& d = c.noise;
    d.kappa_inv_us = detail::field(n, "kappa_inv_us", "noise.kappa_inv_us", d.kappa_inv_us);
    d.gamma21_inv_us = detail::field(n, "gamma21_inv_us", "noise.gamma21_inv_us", d.gamma21_inv_us);
    d.gamma20_inv_us = detail::field(n, "gamma20_inv_us", "noise.gamma20_inv_us", d.gamma20_inv_us);
    d.gamma10_inv_us = detail::field(n, "gamma10_inv_us", "noise.gamma10_inv_us", d.gamma10_inv_us);
    d.gamma_phi2_inv_us =
        detail::field(n, "gamma_phi2_inv_us", "noise.gamma_phi2_inv_us", d.gamma_phi2_inv_us);
    d.gamma_phi1_inv_us =
        detail::field(n, "gamma_phi1_inv_us", "noise.gamma_phi1_inv_us", d.gamma_phi1_inv_us);
  }
  c.photon_cutoff = detail::field(j, "photon_cutoff", "photon_cutoff", c.photon_cutoff);
  if (j.contains("dt_override_ns") && !j["dt_override_ns"].is_null()) {
    c.dt_override_ns = detail::field(j, "dt_override_ns", "dt_override_ns", 0.0);
  }
  c.output_path = detail::field(j, "output_path", "output_path", c.output_path);
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

}  // namespace djqed
