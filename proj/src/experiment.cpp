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

#include "metavqe/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "metavqe/error.hpp"
#include "metavqe/exact.hpp"
#include "metavqe/gradient.hpp"
#include "metavqe/parallel.hpp"
#include "text_util.hpp"

namespace fs = std::filesystem;

namespace metavqe {

namespace {

std::size_t to_size(std::string_view key, std::string_view value) {
  auto v = detail::parse_unsigned(value);
  if (!v) throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, value));
  return *v;
}

double to_real(std::string_view key, std::string_view value) {
  auto v = detail::parse_double(value);
  if (!v || !std::isfinite(*v)) {
    throw ConfigError(fmt::format("{}: '{}' is not a finite number", key, value));
  }
  return *v;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = detail::trim(value);
  if (key == "model") {
    model = std::string(value);
  } else if (key == "hamiltonian_file") {
    hamiltonian_file = std::string(value);
  } else if (key == "n") {
    n = to_size(key, value);
  } else if (key == "L1") {
    L1 = to_size(key, value);
  } else if (key == "L2") {
    L2 = to_size(key, value);
  } else if (key == "field") {
    field = to_real(key, value);
  } else if (key == "meta_start") {
    meta_start = to_real(key, value);
  } else if (key == "meta_stop") {
    meta_stop = to_real(key, value);
  } else if (key == "train_points") {
    train_points = to_size(key, value);
  } else if (key == "test_points") {
    test_points = to_size(key, value);
  } else if (key == "algorithms") {
    algorithms.clear();
    for (auto part : detail::split(value, ',')) {
      part = detail::trim(part);
      if (!part.empty()) algorithms.emplace_back(part);
    }
  } else if (key == "encoding") {
    encoding = parse_encoding(value);
  } else if (key == "train_init") {
    train_init = std::string(value);
  } else if (key == "meta_restarts") {
    meta_restarts = to_size(key, value);
  } else if (key == "vqe_init") {
    vqe_init = std::string(value);
  } else if (key == "generator_file") {
    generator_file = std::string(value);
  } else if (key == "ucc_repetitions") {
    ucc_repetitions = to_size(key, value);
  } else if (key == "seed") {
    seed = to_size(key, value);
  } else if (key == "restarts") {
    restarts = to_size(key, value);
  } else if (key == "vqe_seeds") {
    vqe_seeds = to_size(key, value);
  } else if (key == "max_iterations") {
    optimizer.max_iterations = to_size(key, value);
  } else if (key == "gradient_tolerance") {
    optimizer.gradient_tolerance = to_real(key, value);
  } else if (key == "function_tolerance") {
    optimizer.function_tolerance = to_real(key, value);
  } else if (key == "history") {
    optimizer.history = to_size(key, value);
  } else if (key == "sufficient_decrease") {
    optimizer.sufficient_decrease = to_real(key, value);
  } else if (key == "curvature") {
    optimizer.curvature = to_real(key, value);
  } else if (key == "line_search_steps") {
    optimizer.max_line_search_steps = to_size(key, value);
  } else if (key == "threads") {
    threads = to_size(key, value);
  } else if (key == "output_dir") {
    output_dir = std::string(value);
  } else {
    throw ConfigError(fmt::format("unknown config key '{}'", key));
  }
}

bool ExperimentConfig::wants(std::string_view algorithm) const {
  return std::find(algorithms.begin(), algorithms.end(), algorithm) != algorithms.end();
}

void ExperimentConfig::validate() const {
  if (model != "xxz" && model != "file") {
    throw ConfigError(fmt::format("model must be 'xxz' or 'file', got '{}'", model));
  }
  if (model == "file" && hamiltonian_file.empty()) {
    throw ConfigError("model=file needs hamiltonian_file");
  }
  if (model == "xxz" && (n < 2 || n > kMaxQubits)) {
    throw ConfigError(fmt::format("n must be in [2, {}], got {}", kMaxQubits, n));
  }
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  for (const auto& a : algorithms) {
    if (std::find(std::begin(kAlgorithms), std::end(kAlgorithms), a) ==
        std::end(kAlgorithms)) {
      throw ConfigError(fmt::format("unknown algorithm '{}'", a));
    }
  }
  if (generator_file.empty()) {
    if ((wants("meta") || wants("opt-meta")) && L1 == 0) {
      throw ConfigError("meta-VQE needs L1 >= 1");
    }
    if (L1 + L2 == 0 && algorithms != std::vector<std::string>{"exact"}) {
      throw ConfigError("circuit needs at least one layer");
    }
  } else if (ucc_repetitions == 0) {
    throw ConfigError("ucc_repetitions must be positive");
  }
  if (train_points == 0 || test_points == 0) {
    throw ConfigError("train_points and test_points must be positive");
  }
  if (meta_stop < meta_start) throw ConfigError("meta_stop must be >= meta_start");
  if (train_init != "random" && train_init != "zeros") {
    throw ConfigError(fmt::format("train_init must be 'random' or 'zeros', got '{}'",
                                  train_init));
  }
  if (vqe_init != "random" && vqe_init != "zeros") {
    throw ConfigError(fmt::format("vqe_init must be 'random' or 'zeros', got '{}'", vqe_init));
  }
  if (restarts == 0 || vqe_seeds == 0 || meta_restarts == 0) {
    throw ConfigError("restarts, meta_restarts and vqe_seeds must be positive");
  }
  optimizer.validate();
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  auto line = [&out](std::string_view k, const auto& v) {
    out += fmt::format("{} = {}\n", k, v);
  };
  line("model", model);
  if (!hamiltonian_file.empty()) line("hamiltonian_file", hamiltonian_file);
  line("n", n);
  line("L1", L1);
  line("L2", L2);
  line("field", field);
  line("meta_start", meta_start);
  line("meta_stop", meta_stop);
  line("train_points", train_points);
  line("test_points", test_points);
  line("algorithms", join(algorithms));
  line("encoding", to_string(encoding));
  line("train_init", train_init);
  line("meta_restarts", meta_restarts);
  line("vqe_init", vqe_init);
  if (!generator_file.empty()) line("generator_file", generator_file);
  line("ucc_repetitions", ucc_repetitions);
  line("seed", seed);
  line("restarts", restarts);
  line("vqe_seeds", vqe_seeds);
  line("max_iterations", optimizer.max_iterations);
  line("gradient_tolerance", optimizer.gradient_tolerance);
  line("function_tolerance", optimizer.function_tolerance);
  line("history", optimizer.history);
  line("sufficient_decrease", optimizer.sufficient_decrease);
  line("curvature", optimizer.curvature);
  line("line_search_steps", optimizer.max_line_search_steps);
  line("threads", threads);
  line("output_dir", output_dir);
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    try {
      config.set(detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return config;
}

ExperimentModel load_model(const ExperimentConfig& config) {
  ExperimentModel model;
  if (config.model == "xxz") {
    model = {xxz_family(config.n), "delta", {{"field", config.field}}, config.n, {}};
  } else {
    HamiltonianFamily family = parse_hamiltonian_family(read_file(config.hamiltonian_file));
    std::string symbol = family.parameter_names.front();
    const std::size_t n = family.nqubits;
    model = {std::move(family), std::move(symbol), {}, n, {}};
  }
  if (!config.generator_file.empty()) {
    model.generators = parse_generator_file(read_file(config.generator_file));
    if (model.generators->nqubits != model.nqubits) {
      throw ConfigError(fmt::format("generator file has {} qubits, Hamiltonian has {}",
                                    model.generators->nqubits, model.nqubits));
    }
  }
  return model;
}

namespace {

AngleEncoding angle_encoding(Encoding e) {
  switch (e) {
    case Encoding::kLinear:
      return AngleEncoding::kLinear;
    case Encoding::kGaussian:
      return AngleEncoding::kGaussian;
    case Encoding::kGaussianSquared:
      return AngleEncoding::kGaussianSquared;
  }
  return AngleEncoding::kLinear;
}

Circuit encoded_circuit(const ExperimentConfig& config, const ExperimentModel& model) {
  if (!model.generators) {
    return meta_vqe_circuit(model.nqubits, config.L1, config.L2, model.symbol,
                            config.encoding);
  }
  UccOptions opt;
  opt.repetitions = config.ucc_repetitions;
  opt.encoding = angle_encoding(config.encoding);
  opt.symbol = model.symbol;
  return build_ucc_circuit(*model.generators, opt);
}

Circuit plain_circuit(const ExperimentConfig& config, const ExperimentModel& model) {
  if (!model.generators) return processing_circuit(model.nqubits, config.L1 + config.L2);
  UccOptions opt;
  opt.repetitions = config.ucc_repetitions;
  return build_ucc_circuit(*model.generators, opt);
}

}  // namespace

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

nlohmann::json summarize(const EnergyProfile& p) {
  std::vector<double> abs_err;
  std::vector<double> rel_err;
  std::size_t near_zero = 0;
  for (const auto& r : p.rows) {
    abs_err.push_back(r.abs_err);
    rel_err.push_back(r.rel_err);
    near_zero += r.rel_is_absolute;
  }
  auto max_of = [](const std::vector<double>& v) {
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  };
  return {{"rows", p.rows.size()},
          {"median_abs_err", median(abs_err)},
          {"max_abs_err", max_of(abs_err)},
          {"median_rel_err", median(rel_err)},
          {"max_rel_err", max_of(rel_err)},
          {"rel_err_as_abs_points", near_zero}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

void write_profile(const fs::path& dir, const EnergyProfile& p) {
  std::ostringstream ss;
  write_profile_csv(ss, p);
  write_text(dir / fmt::format("profile_{}.csv", p.algorithm), ss.str());
  if (!p.traces.empty()) {
    const fs::path tdir = dir / fmt::format("traces_{}", p.algorithm);
    fs::create_directories(tdir);
    // Rows of several seeds are concatenated; index points within each seed.
    std::map<std::uint64_t, std::size_t> next_point;
    for (std::size_t i = 0; i < p.traces.size(); ++i) {
      std::ostringstream ts;
      write_trace_csv(ts, p.traces[i]);
      const std::uint64_t seed = p.rows[i].seed;
      write_text(tdir / fmt::format("p{:03}_s{}.csv", next_point[seed]++, seed), ts.str());
    }
  }
}

void write_training(const fs::path& dir, const TrainResult& r) {
  write_text(dir / fmt::format("train_{}.json", r.algorithm), to_json(r).dump(2) + "\n");
  std::ostringstream ts;
  write_trace_csv(ts, r.trace);
  write_text(dir / fmt::format("trace_{}.csv", r.algorithm), ts.str());
}

EnergyProfile concat(std::vector<EnergyProfile> parts) {
  EnergyProfile out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    out.rows.insert(out.rows.end(), parts[i].rows.begin(), parts[i].rows.end());
    out.traces.insert(out.traces.end(), parts[i].traces.begin(), parts[i].traces.end());
  }
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ExperimentOutputs run_experiment(const ExperimentConfig& config, const ExperimentModel& model,
                                 std::ostream& log, const ExperimentHooks& hooks) {
  ExperimentOutputs out;
  const std::size_t threads =
      config.threads == 0 ? default_thread_count() : config.threads;
  const std::size_t n = model.nqubits;
  const TrainingGrid grid{model.symbol,
                          equispaced(config.meta_start, config.meta_stop, config.train_points),
                          model.constants};
  out.test_points = equispaced(config.meta_start, config.meta_stop, config.test_points);
  const auto& test = out.test_points;
  fmt::print(log, "oracle: {} test points on {} qubits\n", test.size(), n);
  out.exact = exact_energies(model.family, model.symbol, test, model.constants, threads);
  const auto& exact = out.exact;

  auto record = [&](EnergyProfile p) {
    p.L1 = config.L1;
    p.L2 = config.L2;
    if (hooks.on_profile) hooks.on_profile(p);
    out.profiles.push_back(std::move(p));
  };
  auto trained = [&](TrainResult r) -> const TrainResult& {
    if (hooks.on_training) hooks.on_training(r);
    out.trained.push_back(std::move(r));
    return out.trained.back();
  };

  if (config.wants("exact")) {
    EnergyProfile p;
    p.algorithm = "exact";
    p.n = n;
    for (std::size_t i = 0; i < test.size(); ++i) {
      ProfileRow row;
      row.meta_value = test[i];
      row.energy = exact[i];
      row.exact = exact[i];
      row.seed = config.seed;
      row.termination = "exact";
      set_errors(row);
      p.rows.push_back(row);
    }
    record(std::move(p));
  }

  OptimizerConfig opt = config.optimizer;
  opt.rng_seed = config.seed;
  auto train_init = [&](std::size_t restarts) {
    return config.train_init == "zeros" ? InitStrategy{ZerosInit{}}
                                        : InitStrategy{RandomInit{config.seed, restarts}};
  };

  if (config.wants("meta") || config.wants("opt-meta")) {
    Circuit circuit = encoded_circuit(config, model);
    fmt::print(log, "training meta-VQE ({} parameters, {} points)\n",
               circuit.registry().size(), grid.points.size());
    const TrainResult& meta = trained(
        train("meta", std::move(circuit), model.family, grid, train_init(config.meta_restarts),
              opt, threads));
    if (config.wants("meta")) {
      record(evaluate_profile(meta, model.family, test, exact, threads));
    }
    if (config.wants("opt-meta")) {
      fmt::print(log, "opt-meta-VQE on {} points\n", test.size());
      PerPointSetup setup{"opt-meta", model.symbol, model.constants, meta.circuit,
                          WarmStart{meta.params}, opt, config.L1, config.L2};
      record(run_vqe_per_point(setup, model.family, test, exact, threads));
    }
  }

  if (config.wants("ga") || config.wants("opt-ga")) {
    Circuit circuit = plain_circuit(config, model);
    fmt::print(log, "training GA-VQE ({} parameters, {} points)\n",
               circuit.registry().size(), grid.points.size());
    const TrainResult& ga = trained(
        train("ga", std::move(circuit), model.family, grid, train_init(1), opt, threads));
    if (config.wants("ga")) {
      record(evaluate_profile(ga, model.family, test, exact, threads));
    }
    if (config.wants("opt-ga")) {
      fmt::print(log, "opt-GA-VQE on {} points\n", test.size());
      PerPointSetup setup{"opt-ga", model.symbol, model.constants, ga.circuit,
                          WarmStart{ga.params}, opt, config.L1, config.L2};
      record(run_vqe_per_point(setup, model.family, test, exact, threads));
    }
  }

  if (config.wants("vqe")) {
    std::vector<EnergyProfile> parts;
    for (std::size_t s = 0; s < config.vqe_seeds; ++s) {
      const std::uint64_t seed = config.seed + s;
      fmt::print(log, "VQE (random init, seed {}) on {} points\n", seed, test.size());
      const InitStrategy init = config.vqe_init == "zeros"
                                    ? InitStrategy{ZerosInit{}}
                                    : InitStrategy{RandomInit{seed, config.restarts}};
      PerPointSetup setup{"vqe", model.symbol, model.constants, plain_circuit(config, model),
                          init, opt, config.L1, config.L2};
      parts.push_back(run_vqe_per_point(setup, model.family, test, exact, threads));
    }
    record(concat(std::move(parts)));
  }
  return out;
}

const EnergyProfile* ExperimentOutputs::profile(std::string_view algorithm) const {
  for (const auto& p : profiles) {
    if (p.algorithm == algorithm) return &p;
  }
  return nullptr;
}

int cmd_run(const ExperimentConfig& config, std::ostream& log) {
  try {
    config.validate();
  } catch (const Error& e) {
    fmt::print(log, "invalid config: {}\n", e.what());
    return kExitUsage;
  }
  ExperimentModel model;
  try {
    model = load_model(config);
  } catch (const Error& e) {
    fmt::print(log, "cannot load model: {}\n", e.what());
    return kExitUsage;
  }

  const fs::path dir = config.output_dir;
  nlohmann::json summary;
  summary["generated_at"] = timestamp();
  summary["config"] = config.to_text();
  summary["algorithms"] = nlohmann::json::object();

  ExperimentHooks hooks;
  hooks.on_training = [&](const TrainResult& r) { write_training(dir, r); };
  hooks.on_profile = [&](const EnergyProfile& p) {
    write_profile(dir, p);
    summary["algorithms"][p.algorithm] = summarize(p);
    fmt::print(log, "{}: median abs err {:.3g}\n", p.algorithm,
               summary["algorithms"][p.algorithm]["median_abs_err"].get<double>());
  };

  try {
    fs::create_directories(dir);
    run_experiment(config, model, log, hooks);
  } catch (const std::exception& e) {
    fmt::print(log, "run failed: {}\n", e.what());
    try {
      write_text(dir / "summary.json", summary.dump(2) + "\n");
    } catch (...) {
    }
    return kExitRuntime;
  }
  try {
    write_text(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    fmt::print(log, "{}\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_exact(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
  ExperimentModel model;
  try {
    config.validate();
    model = load_model(config);
  } catch (const Error& e) {
    fmt::print(log, "invalid config: {}\n", e.what());
    return kExitUsage;
  }
  try {
    const auto test = equispaced(config.meta_start, config.meta_stop, config.test_points);
    const std::size_t threads =
        config.threads == 0 ? default_thread_count() : config.threads;
    const auto exact = exact_energies(model.family, model.symbol, test, model.constants,
                                      threads);
    fmt::print(out, "# {} exact\n", model.symbol);
    for (std::size_t i = 0; i < test.size(); ++i) {
      fmt::print(out, "{:.12g} {:.12g}\n", test[i], exact[i]);
    }
  } catch (const std::exception& e) {
    fmt::print(log, "exact failed: {}\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

namespace {

struct Series {
  std::string label;
  bool is_exact;
  std::vector<const ProfileRow*> rows;
};

}  // namespace

int cmd_plotdata(const std::vector<fs::path>& profiles, const fs::path& output_dir,
                 std::ostream& log) {
  if (profiles.empty()) {
    fmt::print(log, "plotdata: no profiles given\n");
    return kExitUsage;
  }
  std::vector<EnergyProfile> loaded;
  for (const auto& path : profiles) {
    std::ifstream in(path);
    if (!in) {
      fmt::print(log, "plotdata: cannot read '{}'\n", path.string());
      return kExitUsage;
    }
    try {
      loaded.push_back(read_profile_csv(in));
    } catch (const ParseError& e) {
      fmt::print(log, "plotdata: '{}': {}\n", path.string(), e.what());
      return kExitUsage;
    }
    if (loaded.back().rows.empty()) {
      fmt::print(log, "plotdata: '{}' has no rows\n", path.string());
      return kExitUsage;
    }
  }

  // Split every profile into one series per seed, in order of appearance.
  std::vector<Series> series;
  std::vector<std::size_t> origin;
  for (std::size_t f = 0; f < loaded.size(); ++f) {
    const auto& p = loaded[f];
    std::vector<std::uint64_t> seeds;
    for (const auto& r : p.rows) {
      if (std::find(seeds.begin(), seeds.end(), r.seed) == seeds.end()) seeds.push_back(r.seed);
    }
    for (auto s : seeds) {
      Series ser;
      ser.label = seeds.size() > 1 ? fmt::format("{}-s{}", p.algorithm, s) : p.algorithm;
      ser.is_exact = p.algorithm == "exact";
      for (const auto& r : p.rows) {
        if (r.seed == s) ser.rows.push_back(&r);
      }
      series.push_back(std::move(ser));
      origin.push_back(f);
    }
  }

  const auto& grid = series.front().rows;
  for (std::size_t s = 1; s < series.size(); ++s) {
    const auto& rows = series[s].rows;
    bool same = rows.size() == grid.size();
    for (std::size_t i = 0; same && i < rows.size(); ++i) {
      const double a = rows[i]->meta_value;
      const double b = grid[i]->meta_value;
      same = std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
    }
    if (!same) {
      fmt::print(log, "plotdata: '{}' is on a different grid than '{}'\n",
                 profiles[origin[s]].string(), profiles[origin[0]].string());
      return kExitUsage;
    }
  }

  try {
    fs::create_directories(output_dir);
    std::string energy = "# delta";
    std::string abs_err = "# delta";
    std::string abs_log;
    std::string rel_err = "# delta";
    for (const auto& s : series) {
      energy += " " + s.label;
      if (s.is_exact) continue;
      abs_err += " " + s.label;
      abs_log += " log10_" + s.label;
      rel_err += " " + s.label;
    }
    energy += "\n";
    abs_err += abs_log + "\n";
    rel_err += "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::string delta = fmt::format("{:.12g}", grid[i]->meta_value);
      energy += delta;
      abs_err += delta;
      rel_err += delta;
      std::string logs;
      for (const auto& s : series) {
        energy += fmt::format(" {:.12g}", s.rows[i]->energy);
        if (s.is_exact) continue;
        abs_err += fmt::format(" {:.12g}", s.rows[i]->abs_err);
        logs += fmt::format(" {:.12g}", std::log10(std::max(s.rows[i]->abs_err, 1e-16)));
        rel_err += fmt::format(" {:.12g}", s.rows[i]->rel_err);
      }
      energy += "\n";
      abs_err += logs + "\n";
      rel_err += "\n";
    }
    write_text(output_dir / "energy.dat", energy);
    write_text(output_dir / "abs_error.dat", abs_err);
    write_text(output_dir / "rel_error.dat", rel_err);
  } catch (const std::exception& e) {
    fmt::print(log, "plotdata failed: {}\n", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_validate_config(const fs::path& path, std::ostream& out, std::ostream& log) {
  try {
    ExperimentConfig config = parse_config(read_file(path));
    config.validate();
    out << config.to_text();
  } catch (const Error& e) {
    fmt::print(log, "invalid config: {}\n", e.what());
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace metavqe
