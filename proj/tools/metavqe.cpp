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

// Command-line driver: run, exact, plotdata, validate-config.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "metavqe/error.hpp"
#include "metavqe/experiment.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct ExperimentArgs {
  std::string config_path;
  std::vector<std::string> sets;
  Overrides flags;
  bool full = false;
  bool gaussian_squared = false;
};

void add_experiment_options(CLI::App& app, ExperimentArgs& args) {
  app.add_option("--config", args.config_path, "key = value experiment file")
      ->check(CLI::ExistingFile);
  app.add_option("--set", args.sets, "override one key, as key=value (repeatable)");
  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static constexpr Flag kFlags[] = {
      {"--model", "model", "xxz or file"},
      {"--hamiltonian-file", "hamiltonian_file", "family file for model=file"},
      {"--n", "n", "qubits of the XXZ chain"},
      {"--L1", "L1", "encoding layers"},
      {"--L2", "L2", "processing layers"},
      {"--field", "field", "fixed field strength"},
      {"--meta-start", "meta_start", "first sweep value"},
      {"--meta-stop", "meta_stop", "last sweep value"},
      {"--train-points", "train_points", "training grid size"},
      {"--test-points", "test_points", "test grid size"},
      {"--algorithms", "algorithms", "comma list of meta,ga,vqe,opt-meta,opt-ga,exact"},
      {"--encoding", "encoding", "linear, gaussian or gaussian-squared"},
      {"--train-init", "train_init", "random or zeros"},
      {"--meta-restarts", "meta_restarts", "random starts for meta-VQE training"},
      {"--vqe-init", "vqe_init", "random or zeros start for standard VQE"},
      {"--generator-file", "generator_file", "Pauli-exponential ansatz generators"},
      {"--ucc-repetitions", "ucc_repetitions", "repetitions of the generator block"},
      {"--seed", "seed", "base random seed"},
      {"--restarts", "restarts", "random restarts per VQE point"},
      {"--vqe-seeds", "vqe_seeds", "independent seeds for the VQE baseline"},
      {"--max-iterations", "max_iterations", "optimiser iteration cap"},
      {"--threads", "threads", "worker threads (0 = all cores)"},
      {"--output-dir", "output_dir", "artifact directory"},
  };
  for (const auto& f : kFlags) {
    app.add_option_function<std::string>(
        f.name, [&args, key = std::string(f.key)](const std::string& v) {
          args.flags.emplace_back(key, v);
        },
        f.help);
  }
  app.add_flag("--full", args.full, "full-size chain (n = 14)");
  app.add_flag("--gaussian-squared", args.gaussian_squared,
               "use exp(beta (gamma - x)^2) in the Gaussian encoding");
}

metavqe::ExperimentConfig build_config(const ExperimentArgs& args) {
  metavqe::ExperimentConfig config;
  if (const char* env = std::getenv(metavqe::kOutputDirEnv); env && *env) {
    config.output_dir = env;
  }
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path, std::ios::binary);
    if (!in) throw metavqe::ConfigError("cannot read " + args.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    // Keys in the file win over the environment default.
    config = metavqe::parse_config("output_dir = " + config.output_dir + "\n" + ss.str());
    // Relative input files are looked up next to the config file.
    const auto dir = std::filesystem::path(args.config_path).parent_path();
    for (std::string* file : {&config.hamiltonian_file, &config.generator_file}) {
      if (!file->empty() && std::filesystem::path(*file).is_relative()) {
        *file = (dir / *file).string();
      }
    }
  }
  for (const auto& s : args.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw metavqe::ConfigError("--set expects key=value, got '" + s + "'");
    }
    config.set(s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& [key, value] : args.flags) config.set(key, value);
  if (args.full) config.n = 14;
  if (args.gaussian_squared) config.encoding = metavqe::Encoding::kGaussianSquared;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meta-VQE workbench"};
  app.require_subcommand(1);

  ExperimentArgs run_args;
  auto* run = app.add_subcommand("run", "train and evaluate the selected algorithms");
  add_experiment_options(*run, run_args);

  ExperimentArgs exact_args;
  auto* exact = app.add_subcommand("exact", "print exact ground energies over the test grid");
  add_experiment_options(*exact, exact_args);

  std::vector<std::string> profiles;
  std::string plot_dir;
  auto* plot = app.add_subcommand("plotdata", "turn profile CSVs into plot-data files");
  plot->add_option("profiles", profiles, "profile CSV files")->required();
  plot->add_option("--output-dir", plot_dir, "destination (default: current directory)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "check and normalise a config file");
  validate->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return metavqe::kExitUsage;
  }

  try {
    if (*run || *exact) {
      const bool is_run = static_cast<bool>(*run);
      metavqe::ExperimentConfig config;
      try {
        config = build_config(is_run ? run_args : exact_args);
      } catch (const metavqe::Error& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return metavqe::kExitUsage;
      }
      return is_run ? metavqe::cmd_run(config, std::cerr)
                    : metavqe::cmd_exact(config, std::cout, std::cerr);
    }
    if (*plot) {
      std::vector<std::filesystem::path> paths(profiles.begin(), profiles.end());
      if (plot_dir.empty()) {
        const char* env = std::getenv(metavqe::kOutputDirEnv);
        plot_dir = env && *env ? env : ".";
      }
      return metavqe::cmd_plotdata(paths, plot_dir, std::cerr);
    }
    return metavqe::cmd_validate_config(validate_path, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return metavqe::kExitRuntime;
  }
}
