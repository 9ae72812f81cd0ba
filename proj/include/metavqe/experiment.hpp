// Copyright 2026 The metavqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "metavqe/circuit.hpp"
#include "metavqe/optimizer.hpp"
#include "metavqe/pauli.hpp"
#include "metavqe/workflows.hpp"

namespace metavqe {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable holding the default output directory.
inline constexpr const char* kOutputDirEnv = "METAVQE_OUTPUT_DIR";

/**
 * One experiment, serialisable as a flat `key = value` file:
 *
 *     model = xxz
 *     n = 8
 *     L1 = 2
 *     L2 = 2
 *     field = 0.75
 *     meta_start = -1.1
 *     meta_stop = 1.1
 *     train_points = 20
 *     test_points = 100
 *     algorithms = meta,ga,vqe,opt-meta,opt-ga
 *
 * `#` starts a comment. Unknown keys are rejected.
 */
struct ExperimentConfig {
  std::string model = "xxz";
  std::string hamiltonian_file;
  std::size_t n = 8;
  std::size_t L1 = 2;
  std::size_t L2 = 2;
  double field = 0.75;
  double meta_start = -1.1;
  double meta_stop = 1.1;
  std::size_t train_points = 20;
  std::size_t test_points = 100;
  std::vector<std::string> algorithms = {"meta", "ga", "vqe", "opt-meta", "opt-ga"};
  Encoding encoding = Encoding::kLinear;
  /// Start of meta-VQE and GA-VQE training: "random" or "zeros".
  std::string train_init = "random";
  /// Best of this many random starts for meta-VQE training.
  std::size_t meta_restarts = 8;
  /// Start of every standard VQE point: "random" or "zeros".
  std::string vqe_init = "random";
  /// Optional generator file; when set, every algorithm uses the
  /// Pauli-exponential ansatz built from it instead of the layered one.
  std::string generator_file;
  std::size_t ucc_repetitions = 2;
  std::uint64_t seed = 1;
  /// Random restarts per point for the standard VQE baseline.
  std::size_t restarts = 1;
  /// Independent seeds (seed, seed + 1, ...) for the standard VQE baseline.
  std::size_t vqe_seeds = 1;
  OptimizerConfig optimizer;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
  std::string output_dir = "metavqe-out";

  /// Assigns one key; throws ConfigError for an unknown key or bad value.
  void set(std::string_view key, std::string_view value);

  /// Throws ConfigError when the combination is unusable.
  void validate() const;

  std::string to_text() const;

  bool wants(std::string_view algorithm) const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

inline constexpr std::string_view kAlgorithms[] = {"meta", "ga", "vqe", "opt-meta",
                                                   "opt-ga", "exact"};

/// Parses the key=value text; duplicate keys take the last value.
ExperimentConfig parse_config(std::string_view text);

/// The swept family, grid symbol and constants an experiment runs on.
struct ExperimentModel {
  HamiltonianFamily family;
  std::string symbol;
  MetaValues constants;
  std::size_t nqubits;
  std::optional<GeneratorSet> generators;
};

ExperimentModel load_model(const ExperimentConfig& config);

/// Everything one experiment produced, in the order it was computed.
struct ExperimentOutputs {
  std::vector<double> test_points;
  std::vector<double> exact;
  std::vector<TrainResult> trained;
  std::vector<EnergyProfile> profiles;

  /// nullptr when `algorithm` was not run.
  const EnergyProfile* profile(std::string_view algorithm) const;
};

/// Called as soon as each result is ready.
struct ExperimentHooks {
  std::function<void(const TrainResult&)> on_training;
  std::function<void(const EnergyProfile&)> on_profile;
};

/// Runs the selected algorithms on `model`; `config` must already be valid.
ExperimentOutputs run_experiment(const ExperimentConfig& config, const ExperimentModel& model,
                                 std::ostream& log, const ExperimentHooks& hooks = {});

/// Writes profiles, training results, traces and summary.json to
/// config.output_dir. Returns an exit code; messages go to `log`.
int cmd_run(const ExperimentConfig& config, std::ostream& log);

/// Prints "delta energy" pairs of the oracle over the test grid.
int cmd_exact(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

/**
 * Reads profile CSVs and writes energy.dat, abs_error.dat and rel_error.dat
 * into `output_dir`. Each input contributes one column per seed, labelled by
 * algorithm; grids must agree across inputs.
 */
int cmd_plotdata(const std::vector<std::filesystem::path>& profiles,
                 const std::filesystem::path& output_dir, std::ostream& log);

/// Parses and validates a config file, printing the normalised form.
int cmd_validate_config(const std::filesystem::path& path, std::ostream& out,
                        std::ostream& log);

}  // namespace metavqe
