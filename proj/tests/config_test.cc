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

#include "djqed/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"

using namespace djqed;
using nlohmann::json;

namespace {

std::string error_field(const json& j) {
  try {
    run_config_from_json(j).validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(run_config, defaults) {
  RunConfig c;
  EXPECT_EQ(c.b0.size(), 13U);
  EXPECT_EQ(c.b0.front(), 6.0);
  EXPECT_EQ(c.b0.back(), 30.0);
  EXPECT_NO_THROW(c.validate());
  NoiseParams n = c.noise.rates();
  EXPECT_DOUBLE_EQ(n.kappa, 2e5);
  EXPECT_DOUBLE_EQ(n.gamma20, 1e6 / 150.0);
  CouplingParams p = c.couplings(24.0);
  EXPECT_DOUBLE_EQ(p.g01, kTwoPi * 15e6);
  EXPECT_DOUBLE_EQ(p.b1, 10.0);
}

TEST(run_config, json_round_trip) {
  RunConfig c;
  c.g_over_2pi_mhz = 12.5;
  c.b0 = {7.0, 24.0};
  c.b1 = 8.0;
  c.noise.gamma21_inv_us = 17.0;
  c.photon_cutoff = 4;
  c.dt_override_ns = 0.01;
  c.output_path = "out.csv";
  RunConfig back = run_config_from_json(json::parse(to_json(c).dump()));
  EXPECT_EQ(back, c);
  EXPECT_EQ(to_json(back).dump(), to_json(c).dump());

  RunConfig plain;
  EXPECT_EQ(run_config_from_json(json::parse(to_json(plain).dump())), plain);
}

TEST(run_config, scalar_b0) {
  RunConfig c = run_config_from_json(json{{"b0", 24}});
  EXPECT_EQ(c.b0, std::vector<double>{24.0});
}

TEST(run_config, missing_fields_take_defaults) {
  EXPECT_EQ(run_config_from_json(json::object()), RunConfig{});
  RunConfig c = run_config_from_json(json{{"noise", {{"kappa_inv_us", 2.0}}}});
  EXPECT_EQ(c.noise.kappa_inv_us, 2.0);
  EXPECT_EQ(c.noise.gamma21_inv_us, 15.0);
}

TEST(run_config, field_level_errors) {
  EXPECT_EQ(error_field(json{{"b0", json::array()}}), "b0");
  EXPECT_EQ(error_field(json{{"b0", {6, 8, -1}}}), "b0[2]");
  EXPECT_EQ(error_field(json{{"b1", 0}}), "b1");
  EXPECT_EQ(error_field(json{{"g_over_2pi_mhz", -15}}), "g_over_2pi_mhz");
  EXPECT_EQ(error_field(json{{"photon_cutoff", 2}}), "photon_cutoff");
  EXPECT_EQ(error_field(json{{"noise", {{"gamma10_inv_us", 0}}}}), "noise.gamma10_inv_us");
  EXPECT_EQ(error_field(json{{"dt_override_ns", 0}}), "dt_override_ns");
  // 1 ns is far above the 0.05 rad step bound.
  EXPECT_EQ(error_field(json{{"dt_override_ns", 1.0}}), "dt_override_ns");
  EXPECT_EQ(error_field(json{{"b1", "ten"}}), "b1");
  EXPECT_EQ(error_field(json{{"noise", 3}}), "noise");
}

TEST(run_config, rejects_unknown_fields) {
  EXPECT_EQ(error_field(json{{"b2", 1}}), "b2");
  EXPECT_EQ(error_field(json{{"noise", {{"kappa", 1}}}}), "noise.kappa");
  EXPECT_EQ(error_field(json::array()), "<root>");
}

TEST(run_config, null_dt_override) {
  RunConfig c = run_config_from_json(json{{"dt_override_ns", nullptr}});
  EXPECT_FALSE(c.dt_override_ns.has_value());
  EXPECT_FALSE(c.sim_config().dt.has_value());
  RunConfig d = run_config_from_json(json{{"dt_override_ns", 0.002}});
  EXPECT_DOUBLE_EQ(*d.sim_config().dt, 2e-12);
}

TEST(load_run_config, reads_file_and_reports_errors) {
  auto path = std::filesystem::temp_directory_path() / "djqed_config_test.json";
  {
    std::ofstream f(path);
    f << R"({"b0": [10, 20], "b1": 9})";
  }
  RunConfig c = load_run_config(path.string());
  EXPECT_EQ(c.b0, (std::vector<double>{10.0, 20.0}));
  EXPECT_EQ(c.b1, 9.0);
  {
    std::ofstream f(path);
    f << "{not json";
  }
  EXPECT_THROW(load_run_config(path.string()), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_run_config(path.string()), ConfigError);
}
