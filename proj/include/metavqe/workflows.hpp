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
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "metavqe/circuit.hpp"
#include "metavqe/gradient.hpp"
#include "metavqe/optimizer.hpp"
#include "metavqe/pauli.hpp"

namespace metavqe {

/// Values of one swept meta-symbol plus the fixed Hamiltonian constants.
struct TrainingGrid {
  std::string symbol;
  std::vector<double> points;
  MetaValues constants;

  /// Throws ConfigError unless points are non-empty, finite and ascending.
  void validate() const;

  /// Constants plus `symbol = value`.
  MetaValues at(double value) const;
};

/// `count` points from start to stop inclusive, start + i (stop - start)/(count - 1).
std::vector<double> equispaced(double start, double stop, std::size_t count);

/// Family parameter vector for the named values; BindingError if one is missing.
std::vector<double> family_parameters(const HamiltonianFamily& family,
                                      const MetaValues& values);

/**
 * Training loss: the sum over grid points of <psi_i|H(lambda_i)|psi_i>, with
 * its gradient. Points are evaluated independently (in parallel when
 * threads > 1) and summed in grid order.
 */
GradientResult meta_loss(const Circuit& circuit, const HamiltonianFamily& family,
                         const TrainingGrid& grid, std::span<const double> params,
                         std::size_t threads = 1);

struct ZerosInit {};

/// Uniform(-pi, pi) starts for every entry marked random_start, registry
/// initial values for the rest; the best of `restarts` minimisations is kept.
struct RandomInit {
  std::uint64_t seed = 1;
  std::size_t restarts = 1;
};

/// The same parameter vector at every point (opt-meta-VQE, opt-GA-VQE).
struct WarmStart {
  std::vector<double> params;
};

/// ZerosInit means the registry's initial values (zero for plain angles).
using InitStrategy = std::variant<ZerosInit, RandomInit, WarmStart>;

struct TrainResult {
  std::string algorithm;
  Circuit circuit{1};
  std::vector<double> initial_params;
  std::vector<double> params;
  double final_loss = 0.0;
  OptTrace trace;
  TrainingGrid grid;
  OptimizerConfig config;
};

/// Minimises meta_loss() from the start point chosen by `init`.
TrainResult train(std::string algorithm, Circuit circuit,
                  const HamiltonianFamily& family, const TrainingGrid& grid,
                  const InitStrategy& init, const OptimizerConfig& config,
                  std::size_t threads = 1);

/// meta-VQE: L1 encoding layers in grid.symbol, then L2 processing layers.
/// Throws ConfigError for L1 == 0.
TrainResult train_meta_vqe(const HamiltonianFamily& family,
                           const TrainingGrid& grid, std::size_t n,
                           std::size_t encoding_layers,
                           std::size_t processing_layers,
                           const OptimizerConfig& config,
                           const InitStrategy& init = RandomInit{},
                           Encoding encoding = Encoding::kLinear,
                           std::size_t threads = 1);

/// GA-VQE: the same depth made of processing layers only, trained on the
/// summed loss. Its state does not depend on the meta-symbol.
TrainResult train_ga_vqe(const HamiltonianFamily& family, const TrainingGrid& grid,
                         std::size_t n, std::size_t layers,
                         const OptimizerConfig& config,
                         const InitStrategy& init = RandomInit{},
                         std::size_t threads = 1);

struct ProfileRow {
  double meta_value = 0.0;
  double energy = 0.0;
  double exact = 0.0;
  double abs_err = 0.0;
  /// Falls back to abs_err when |exact| < 1e-6; see rel_is_absolute.
  double rel_err = 0.0;
  bool rel_is_absolute = false;
  std::uint64_t seed = 0;
  std::string termination;
};

struct EnergyProfile {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t L1 = 0;
  std::size_t L2 = 0;
  std::vector<ProfileRow> rows;
  /// Per-row optimiser traces for per-point algorithms; empty otherwise.
  std::vector<OptTrace> traces;
};

/// Fills the error columns of `row` from its energy and exact values.
void set_errors(ProfileRow& row);

/// Oracle ground energies along `points`.
std::vector<double> exact_energies(const HamiltonianFamily& family,
                                   const std::string& symbol,
                                   std::span<const double> points,
                                   const MetaValues& constants,
                                   std::size_t threads = 1);

/// Runs the trained circuit at each test point. `exact` holds the oracle
/// energies aligned with `test_points`.
EnergyProfile evaluate_profile(const TrainResult& result,
                               const HamiltonianFamily& family,
                               std::span<const double> test_points,
                               std::span<const double> exact,
                               std::size_t threads = 1);

/// Computes the oracle energies itself.
EnergyProfile evaluate_profile(const TrainResult& result,
                               const HamiltonianFamily& family,
                               std::span<const double> test_points,
                               std::size_t threads = 1);

struct PerPointSetup {
  std::string algorithm;
  std::string symbol;
  MetaValues constants;
  /// Any circuit: processing-only for VQE, the meta-VQE circuit for
  /// opt-meta-VQE (the symbol is bound to each test point, all parameters free).
  Circuit circuit{1};
  InitStrategy init = RandomInit{};
  OptimizerConfig config;
  std::size_t L1 = 0;
  std::size_t L2 = 0;
};

/**
 * One independent minimisation per test point. Optimiser failures are
 * recorded in the row's termination column rather than raised; the best
 * energy seen is kept.
 */
EnergyProfile run_vqe_per_point(const PerPointSetup& setup,
                                const HamiltonianFamily& family,
                                std::span<const double> test_points,
                                std::span<const double> exact,
                                std::size_t threads = 1);

/// `meta_value,energy,exact,abs_err,rel_err,algorithm,n,L1,L2,seed,termination`
void write_profile_csv(std::ostream& out, const EnergyProfile& profile);

/// Inverse of write_profile_csv(); throws ParseError on a schema mismatch.
EnergyProfile read_profile_csv(std::istream& in);

nlohmann::json to_json(const OptimizerConfig& config);
nlohmann::json to_json(const TrainingGrid& grid);
/// Registry names and values, final loss, grid and optimiser settings.
nlohmann::json to_json(const TrainResult& result);

}  // namespace metavqe
