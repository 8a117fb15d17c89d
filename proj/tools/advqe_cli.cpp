// Copyright 2025 The advqe Authors
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

// Command-line driver: DNS reference, VQE layer sweep and gate-count report.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "advqe/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

template <typename T>
void set_if(std::optional<T>& target, const CLI::Option* opt, const T& value) {
  if (opt->count() > 0) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Advection-diffusion time marching with a statevector VQE"};
  app.set_version_flag("--version", "advqe 0.1.0");

  std::string config_path;
  double pe = 0.0, dt = 0.0, tmax = 0.0;
  int qubits = 0, restarts = 0;
  std::uint64_t seed = 0;
  std::vector<int> layers;
  std::vector<double> snapshot_times;
  std::string out;
  bool report_gates = true;

  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  auto* o_pe = app.add_option("--pe", pe, "Peclet number");
  auto* o_qubits = app.add_option("--qubits", qubits, "Grid qubits N (2^N points)");
  auto* o_dt = app.add_option("--dt", dt, "Time step");
  auto* o_tmax = app.add_option("--tmax", tmax, "Final time");
  auto* o_layers =
      app.add_option("--layers", layers, "Comma-separated ansatz layer counts to sweep")->delimiter(',');
  auto* o_restarts =
      app.add_option("--restarts", restarts, "Optimizer starts for cold or failed steps");
  auto* o_seed = app.add_option("--seed", seed, "Seed for restart draws");
  auto* o_out = app.add_option("--out", out, "Output directory");
  auto* o_gates = app.add_flag("--report-gates,!--no-report-gates", report_gates,
                               "Write gate_counts.csv and print the comparison table");
  auto* o_snaps = app.add_option("--snapshot-times", snapshot_times,
                                 "Comma-separated snapshot times (multiples of dt)")
                      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  advqe::ConfigOverrides overrides;
  set_if(overrides.pe, o_pe, pe);
  set_if(overrides.qubits, o_qubits, qubits);
  set_if(overrides.dt, o_dt, dt);
  set_if(overrides.tmax, o_tmax, tmax);
  set_if(overrides.layers, o_layers, layers);
  set_if(overrides.restarts, o_restarts, restarts);
  set_if(overrides.seed, o_seed, seed);
  set_if(overrides.out, o_out, out);
  set_if(overrides.report_gates, o_gates, report_gates);
  set_if(overrides.snapshot_times, o_snaps, snapshot_times);

  advqe::RunConfig config;
  try {
    config = advqe::parse_config(
        config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(config_path),
        overrides);
  } catch (const advqe::ConfigError& e) {
    fmt::print(stderr, "advqe: {}\n", e.what());
    return kExitInvalid;
  }

  try {
    const advqe::ExperimentReport report = advqe::run_experiment(config);
    fmt::print("{}", report.summary);
    fmt::print("\nWrote {} files to {}\n", report.written.size(), config.out_dir.string());
    return report.exit_code() == 0 ? kExitOk : kExitRuntime;
  } catch (const std::exception& e) {
    fmt::print(stderr, "advqe: {}\n", e.what());
    return kExitRuntime;
  }
}
