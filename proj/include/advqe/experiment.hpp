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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "advqe/pde.hpp"
#include "advqe/transpile.hpp"
#include "advqe/vqe.hpp"

namespace advqe {

/// Thrown by parse_config. `parse` distinguishes a malformed file from a
/// well-formed file (or flag) carrying an invalid value.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };
  ConfigError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct RunConfig {
  PdeConfig pde = PdeConfig::defaults();
  std::vector<int> layers_sweep = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> snapshot_times = {0.0, 0.25, 0.75, 1.0};
  MarchOptions march;
  std::filesystem::path out_dir = "advqe_out";
  bool report_gates = true;
  int gate_report_layers = 5;
};

/// Values given on the command line; each set field wins over the file.
struct ConfigOverrides {
  std::optional<double> pe;
  std::optional<int> qubits;
  std::optional<double> dt;
  std::optional<double> tmax;
  std::optional<std::vector<int>> layers;
  std::optional<std::vector<double>> snapshot_times;
  std::optional<int> restarts;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<bool> report_gates;
};

/// Defaults, then the JSON file (if any), then `overrides`. Recognized file
/// keys are listed in the README; unknown keys are rejected. Throws
/// ConfigError.
RunConfig parse_config(const std::optional<std::filesystem::path>& file,
                       const ConfigOverrides& overrides = {});

/// Same, reading the JSON document from a string (for tests).
RunConfig parse_config_text(const std::string& json_text, const ConfigOverrides& overrides = {});

struct LayerOutcome {
  int layers = 0;
  double final_infidelity = 1.0;
  bool completed = false;
  bool converged = false;
  std::size_t unconverged_steps = 0;
  long total_iterations = 0;
  double seconds = 0.0;
  std::string failure;
};

struct ExperimentReport {
  std::vector<LayerOutcome> layers;
  std::vector<std::filesystem::path> written;
  std::string summary;
  int exit_code() const;
};

/// Runs DNS once, marches VQE for every entry of the layer sweep and writes
/// the CSV files, gate counts and plot script into config.out_dir.
ExperimentReport run_experiment(const RunConfig& config);

/// Text table with Trotter | VarQTE | AVQDS | VQE(ref) | VQE(computed)
/// columns; computed entries outside +-25% of the VQE reference are marked.
std::string emit_comparison_report(const GateCounts& computed,
                                   const std::vector<ReferenceColumn>& reference);

/// Computed counts for the transpiled `layers`-layer ansatz on `n_qubits`,
/// bound to seeded random angles.
GateCounts ansatz_gate_counts(int n_qubits, int layers, std::uint64_t seed = 7);

}  // namespace advqe
