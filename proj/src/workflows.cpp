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

#include "metavqe/workflows.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "metavqe/error.hpp"
#include "metavqe/exact.hpp"
#include "metavqe/parallel.hpp"
#include "text_util.hpp"

namespace metavqe {

void TrainingGrid::validate() const {
  if (points.empty()) throw ConfigError("training grid is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw ConfigError("training grid value is not finite");
    if (i > 0 && points[i] < points[i - 1]) {
      throw ConfigError("training grid must be sorted ascending");
    }
  }
}

MetaValues TrainingGrid::at(double value) const {
  MetaValues out = constants;
  out[symbol] = value;
  return out;
}

std::vector<double> equispaced(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double span = stop - start;
  const double denom = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = start + static_cast<double>(i) * span / denom;
  }
  out.back() = stop;
  return out;
}

std::vector<double> family_parameters(const HamiltonianFamily& family,
                                      const MetaValues& values) {
  std::vector<double> out;
  out.reserve(family.parameter_names.size());
  for (const auto& name : family.parameter_names) {
    auto it = values.find(name);
    if (it == values.end()) {
      throw BindingError(fmt::format("Hamiltonian parameter '{}' is unbound", name));
    }
    out.push_back(it->second);
  }
  return out;
}

namespace {

// Per-point Hamiltonians and resolved meta vectors, built once per training.
struct LossTerms {
  std::vector<PauliSum> hamiltonians;
  std::vector<std::vector<double>> metas;
};

LossTerms make_terms(const Circuit& circuit, const HamiltonianFamily& family,
                     const TrainingGrid& grid) {
  grid.validate();
  if (!circuit.meta_symbols().empty() && !circuit.find_meta_symbol(grid.symbol)) {
    throw BindingError(fmt::format("circuit does not encode grid symbol '{}'",
                                   grid.symbol));
  }
  LossTerms t;
  for (double p : grid.points) {
    const MetaValues values = grid.at(p);
    t.hamiltonians.push_back(family(family_parameters(family, values)));
    t.metas.push_back(circuit.resolve_meta(values));
  }
  return t;
}

GradientResult evaluate_loss(const Circuit& circuit, const LossTerms& terms,
                             std::span<const double> params, std::size_t threads) {
  const std::size_t m = terms.hamiltonians.size();
  std::vector<GradientResult> parts(m);
  parallel_for(m, threads, [&](std::size_t i) {
    parts[i] = param_shift_gradient(circuit, terms.hamiltonians[i],
                                    std::span<const double>(terms.metas[i]), params);
  });
  GradientResult total;
  total.gradient.assign(params.size(), 0.0);
  for (const auto& p : parts) {
    total.value += p.value;
    for (std::size_t k = 0; k < p.gradient.size(); ++k) total.gradient[k] += p.gradient[k];
    total.shift_evaluations += p.shift_evaluations;
  }
  return total;
}

std::vector<double> start_point(const Circuit& circuit, const InitStrategy& init,
                                std::uint64_t stream, std::size_t restart) {
  const std::size_t size = circuit.registry().size();
  if (const auto* r = std::get_if<RandomInit>(&init)) {
    auto x = random_init(size, derive_seed(r->seed, stream, restart));
    const auto entries = circuit.registry().entries();
    for (std::size_t i = 0; i < size; ++i) {
      if (!entries[i].random_start) x[i] = entries[i].initial_value;
    }
    return x;
  }
  if (const auto* w = std::get_if<WarmStart>(&init)) {
    if (w->params.size() != size) {
      throw DimensionError(fmt::format("warm start has {} parameters, circuit has {}",
                                       w->params.size(), size));
    }
    return w->params;
  }
  return circuit.registry().initial_values();
}

std::size_t restarts_of(const InitStrategy& init) {
  if (const auto* r = std::get_if<RandomInit>(&init)) return std::max<std::size_t>(1, r->restarts);
  return 1;
}

std::uint64_t seed_of(const InitStrategy& init, const OptimizerConfig& config) {
  if (const auto* r = std::get_if<RandomInit>(&init)) return r->seed;
  return config.rng_seed;
}

}  // namespace

GradientResult meta_loss(const Circuit& circuit, const HamiltonianFamily& family,
                         const TrainingGrid& grid, std::span<const double> params,
                         std::size_t threads) {
  return evaluate_loss(circuit, make_terms(circuit, family, grid), params, threads);
}

TrainResult train(std::string algorithm, Circuit circuit,
                  const HamiltonianFamily& family, const TrainingGrid& grid,
                  const InitStrategy& init, const OptimizerConfig& config,
                  std::size_t threads) {
  const LossTerms terms = make_terms(circuit, family, grid);
  auto objective = [&](std::span<const double> x, std::span<double> g) {
    auto r = evaluate_loss(circuit, terms, x, threads);
    std::copy(r.gradient.begin(), r.gradient.end(), g.begin());
    return r.value;
  };

  TrainResult best;
  bool have = false;
  for (std::size_t r = 0; r < restarts_of(init); ++r) {
    auto x0 = start_point(circuit, init, /*stream=*/0, r);
    OptResult opt = minimize(objective, x0, config);
    if (!have || opt.value < best.final_loss) {
      best.initial_params = std::move(x0);
      best.params = std::move(opt.x);
      best.final_loss = opt.value;
      best.trace = std::move(opt.trace);
      have = true;
    }
  }
  best.algorithm = std::move(algorithm);
  best.circuit = std::move(circuit);
  best.grid = grid;
  best.config = config;
  return best;
}

TrainResult train_meta_vqe(const HamiltonianFamily& family,
                           const TrainingGrid& grid, std::size_t n,
                           std::size_t encoding_layers,
                           std::size_t processing_layers,
                           const OptimizerConfig& config, const InitStrategy& init,
                           Encoding encoding, std::size_t threads) {
  if (encoding_layers == 0) {
    throw ConfigError("meta-VQE needs at least one encoding layer");
  }
  return train("meta", meta_vqe_circuit(n, encoding_layers, processing_layers,
                                        grid.symbol, encoding),
               family, grid, init, config, threads);
}

TrainResult train_ga_vqe(const HamiltonianFamily& family, const TrainingGrid& grid,
                         std::size_t n, std::size_t layers,
                         const OptimizerConfig& config, const InitStrategy& init,
                         std::size_t threads) {
  return train("ga", processing_circuit(n, layers), family, grid, init, config,
               threads);
}

void set_errors(ProfileRow& row) {
  row.abs_err = std::abs(row.energy - row.exact);
  row.rel_is_absolute = std::abs(row.exact) < 1e-6;
  row.rel_err = row.rel_is_absolute ? row.abs_err : row.abs_err / std::abs(row.exact);
}

std::vector<double> exact_energies(const HamiltonianFamily& family,
                                   const std::string& symbol,
                                   std::span<const double> points,
                                   const MetaValues& constants, std::size_t threads) {
  std::vector<double> out(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    MetaValues values = constants;
    values[symbol] = points[i];
    out[i] = ground_energy(family(family_parameters(family, values)));
  });
  return out;
}

EnergyProfile evaluate_profile(const TrainResult& result,
                               const HamiltonianFamily& family,
                               std::span<const double> test_points,
                               std::span<const double> exact, std::size_t threads) {
  if (exact.size() != test_points.size()) {
    throw DimensionError("exact energies do not match the test points");
  }
  EnergyProfile profile;
  profile.algorithm = result.algorithm;
  profile.n = result.circuit.nqubits();
  profile.rows.resize(test_points.size());
  parallel_for(test_points.size(), threads, [&](std::size_t i) {
    const MetaValues values = result.grid.at(test_points[i]);
    const PauliSum h = family(family_parameters(family, values));
    const auto meta = result.circuit.resolve_meta(values);
    ProfileRow& row = profile.rows[i];
    row.meta_value = test_points[i];
    row.energy = circuit_energy(result.circuit, h, meta, result.params);
    row.exact = exact[i];
    row.seed = result.config.rng_seed;
    row.termination = std::string(to_string(result.trace.termination));
    set_errors(row);
  });
  return profile;
}

EnergyProfile evaluate_profile(const TrainResult& result,
                               const HamiltonianFamily& family,
                               std::span<const double> test_points,
                               std::size_t threads) {
  const auto exact = exact_energies(family, result.grid.symbol, test_points,
                                    result.grid.constants, threads);
  return evaluate_profile(result, family, test_points, exact, threads);
}

EnergyProfile run_vqe_per_point(const PerPointSetup& setup,
                                const HamiltonianFamily& family,
                                std::span<const double> test_points,
                                std::span<const double> exact, std::size_t threads) {
  if (exact.size() != test_points.size()) {
    throw DimensionError("exact energies do not match the test points");
  }
  EnergyProfile profile;
  profile.algorithm = setup.algorithm;
  profile.n = setup.circuit.nqubits();
  profile.L1 = setup.L1;
  profile.L2 = setup.L2;
  profile.rows.resize(test_points.size());
  profile.traces.resize(test_points.size());
  const Circuit& circuit = setup.circuit;

  parallel_for(test_points.size(), threads, [&](std::size_t i) {
    MetaValues values = setup.constants;
    values[setup.symbol] = test_points[i];
    const PauliSum h = family(family_parameters(family, values));
    const auto meta = circuit.resolve_meta(values);
    auto objective = [&](std::span<const double> x, std::span<double> g) {
      auto r = param_shift_gradient(circuit, h, std::span<const double>(meta), x);
      std::copy(r.gradient.begin(), r.gradient.end(), g.begin());
      return r.value;
    };

    ProfileRow& row = profile.rows[i];
    row.meta_value = test_points[i];
    row.exact = exact[i];
    row.seed = seed_of(setup.init, setup.config);
    row.energy = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts_of(setup.init); ++r) {
      auto x0 = start_point(circuit, setup.init, i, r);
      try {
        OptResult opt = minimize(objective, std::move(x0), setup.config);
        if (opt.value < row.energy) {
          row.energy = opt.value;
          row.termination = std::string(to_string(opt.trace.termination));
          profile.traces[i] = std::move(opt.trace);
        }
      } catch (const NonFiniteObjectiveError& e) {
        const double best = circuit_energy(circuit, h, meta, e.best_x());
        if (best < row.energy) {
          row.energy = best;
          row.termination = "non-finite-abort";
          profile.traces[i] = e.trace();
        }
      }
    }
    set_errors(row);
  });
  return profile;
}

void write_profile_csv(std::ostream& out, const EnergyProfile& profile) {
  out << "meta_value,energy,exact,abs_err,rel_err,algorithm,n,L1,L2,seed,termination\n";
  for (const auto& r : profile.rows) {
    fmt::print(out, "{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{},{},{},{},{},{}\n",
               r.meta_value, r.energy, r.exact, r.abs_err, r.rel_err,
               profile.algorithm, profile.n, profile.L1, profile.L2, r.seed,
               r.termination);
  }
}

EnergyProfile read_profile_csv(std::istream& in) {
  static constexpr std::string_view kHeader =
      "meta_value,energy,exact,abs_err,rel_err,algorithm,n,L1,L2,seed,termination";
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty profile");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw ParseError(1, "profile header does not match schema");

  EnergyProfile profile;
  std::size_t line_no = 1;
  auto number = [&](std::string_view s) {
    auto v = detail::parse_double(s);
    if (!v) throw ParseError(line_no, fmt::format("'{}' is not a number", s));
    return *v;
  };
  auto integer = [&](std::string_view s) {
    auto v = detail::parse_unsigned(s);
    if (!v) throw ParseError(line_no, fmt::format("'{}' is not an integer", s));
    return *v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = detail::split(line, ',');
    if (f.size() != 11) {
      throw ParseError(line_no, fmt::format("expected 11 fields, got {}", f.size()));
    }
    ProfileRow r;
    r.meta_value = number(f[0]);
    r.energy = number(f[1]);
    r.exact = number(f[2]);
    r.abs_err = number(f[3]);
    r.rel_err = number(f[4]);
    r.rel_is_absolute = std::abs(r.exact) < 1e-6;
    const std::string algorithm(f[5]);
    const std::size_t n = integer(f[6]);
    const std::size_t l1 = integer(f[7]);
    const std::size_t l2 = integer(f[8]);
    r.seed = integer(f[9]);
    r.termination = std::string(f[10]);
    if (profile.rows.empty()) {
      profile.algorithm = algorithm;
      profile.n = n;
      profile.L1 = l1;
      profile.L2 = l2;
    } else if (algorithm != profile.algorithm || n != profile.n) {
      throw ParseError(line_no, "profile mixes algorithms or register sizes");
    }
    profile.rows.push_back(std::move(r));
  }
  return profile;
}

nlohmann::json to_json(const OptimizerConfig& c) {
  return {{"max_iterations", c.max_iterations},
          {"gradient_tolerance", c.gradient_tolerance},
          {"function_tolerance", c.function_tolerance},
          {"history", c.history},
          {"sufficient_decrease", c.sufficient_decrease},
          {"curvature", c.curvature},
          {"max_line_search_steps", c.max_line_search_steps},
          {"rng_seed", c.rng_seed}};
}

nlohmann::json to_json(const TrainingGrid& grid) {
  nlohmann::json constants = nlohmann::json::object();
  for (const auto& [k, v] : grid.constants) constants[k] = v;
  return {{"symbol", grid.symbol}, {"points", grid.points}, {"constants", constants}};
}

nlohmann::json to_json(const TrainResult& result) {
  nlohmann::json params = nlohmann::json::array();
  const auto entries = result.circuit.registry().entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    params.push_back({{"name", entries[i].name},
                      {"partition", std::string(to_string(entries[i].partition))},
                      {"value", result.params[i]}});
  }
  return {{"algorithm", result.algorithm},
          {"nqubits", result.circuit.nqubits()},
          {"parameters", params},
          {"final_loss", result.final_loss},
          {"iterations", result.trace.records.empty() ? 0 : result.trace.records.back().iteration},
          {"evaluations", result.trace.evaluations},
          {"termination", std::string(to_string(result.trace.termination))},
          {"grid", to_json(result.grid)},
          {"optimizer", to_json(result.config)}};
}

}  // namespace metavqe
