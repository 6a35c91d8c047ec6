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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "djqed/commands.hpp"

namespace {

struct SimFlags {
  std::string config_path;
  std::string out_path;
  std::vector<double> b0;
  std::optional<int> cutoff;
  std::optional<double> dt_ns;
  bool deterministic = false;
};

void add_sim_flags(CLI::App* cmd, SimFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration");
  cmd->add_option("--out", flags.out_path, "CSV output path (default: stdout)");
  cmd->add_option("--b0", flags.b0, "b0 values, comma separated")->delimiter(',');
  cmd->add_option("--cutoff", flags.cutoff, "photon cutoff (Fock levels 0..n)");
  cmd->add_option("--dt", flags.dt_ns, "integration step in ns");
  cmd->add_flag("--deterministic", flags.deterministic,
                "write wall_time_s as 0 so repeated runs are byte-identical");
}

djqed::RunConfig resolve_config(const SimFlags& flags) {
  djqed::RunConfig cfg;
  if (!flags.config_path.empty()) cfg = djqed::load_run_config(flags.config_path);
  if (!flags.out_path.empty()) cfg.output_path = flags.out_path;
  if (!flags.b0.empty()) cfg.b0 = flags.b0;
  if (flags.cutoff) cfg.photon_cutoff = *flags.cutoff;
  if (flags.dt_ns) cfg.dt_override_ns = *flags.dt_ns;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qubit refined Deutsch-Jozsa: oracle synthesis, ideal runs, pulse "
               "compilation and open-system fidelity simulation"};
  app.require_subcommand(1);

  auto* synth = app.add_subcommand("synth", "build and verify the 35 phase-oracle decompositions");
  std::string synth_out;
  bool synth_json = false;
  synth->add_option("--out", synth_out, "write the table as JSON to this path");
  synth->add_flag("--json", synth_json, "print JSON instead of the text table");

  auto* dj = app.add_subcommand("dj", "run the ideal algorithm");
  std::string dj_function;
  bool dj_all = false;
  std::uint64_t shots = 0;
  std::uint64_t seed = 1;
  std::string dj_out;
  dj->add_option("--function", dj_function, "truth table as 8 characters of 0/1");
  dj->add_flag("--all", dj_all, "CSV over all 72 constant and balanced functions");
  dj->add_option("--shots", shots, "also sample this many measurement shots");
  dj->add_option("--seed", seed, "seed for shot sampling");
  dj->add_option("--out", dj_out, "output path (default: stdout)");

  auto* pulse = app.add_subcommand("pulse", "compile U1, U2 or U3 to a pulse schedule (JSON)");
  std::string pulse_op = "U1";
  double g_mhz = djqed::kReferenceGOver2PiHz / 1e6;
  std::string pulse_out;
  pulse->add_option("--op", pulse_op, "U1, U2 or U3")->required();
  pulse->add_option("--g-mhz", g_mhz, "coupling g/2π in MHz");
  pulse->add_option("--out", pulse_out, "output path (default: stdout)");

  SimFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "fidelity of U1, U2, U3 versus b0 (CSV)");
  add_sim_flags(sweep, sweep_flags);

  SimFlags run_flags;
  std::string run_op;
  auto* run = app.add_subcommand("run", "fidelity at a single b0");
  add_sim_flags(run, run_flags);
  run->add_option("--op", run_op, "U1, U2 or U3 (default: all three)");

  CLI11_PARSE(app, argc, argv);

  namespace cli = djqed::cli;
  auto opt = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::string>(s);
  };
  if (synth->parsed()) {
    cli::SynthOptions o;
    o.json_path = opt(synth_out);
    o.json_to_stdout = synth_json;
    return cli::cmd_synth(o, std::cout, std::cerr);
  }
  if (dj->parsed()) {
    cli::DjOptions o;
    o.function = opt(dj_function);
    o.all = dj_all;
    o.shots = shots;
    o.seed = seed;
    o.out_path = opt(dj_out);
    return cli::cmd_dj(o, std::cout, std::cerr);
  }
  if (pulse->parsed()) {
    return cli::cmd_pulse(pulse_op, g_mhz, opt(pulse_out), std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    return cli::guarded(std::cerr, [&] {
      return cli::cmd_sweep(resolve_config(sweep_flags), sweep_flags.deterministic, std::cout,
                            std::cerr);
    });
  }
  if (run->parsed()) {
    return cli::guarded(std::cerr, [&] {
      auto cfg = resolve_config(run_flags);
      if (run_flags.b0.empty() && run_flags.config_path.empty()) cfg.b0 = {24.0};
      return cli::cmd_run(cfg, opt(run_op), run_flags.deterministic, std::cout, std::cerr);
    });
  }
  return cli::kValidationFailure;
}
