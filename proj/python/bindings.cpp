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

// Python bindings for the core library.

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metavqe/circuit.hpp"
#include "metavqe/error.hpp"
#include "metavqe/exact.hpp"
#include "metavqe/experiment.hpp"
#include "metavqe/gradient.hpp"
#include "metavqe/pauli.hpp"
#include "metavqe/statevector.hpp"
#include "metavqe/workflows.hpp"

namespace py = pybind11;
using namespace metavqe;

namespace {

std::vector<std::complex<double>> amplitudes(const Statevector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

std::vector<std::string> parameter_names(const Circuit& c) {
  std::vector<std::string> out;
  for (const auto& e : c.registry().entries()) out.push_back(e.name);
  return out;
}

OptimizerConfig optimizer_from(std::size_t max_iterations, double gtol, double ftol,
                               std::uint64_t seed) {
  OptimizerConfig c;
  c.max_iterations = max_iterations;
  c.gradient_tolerance = gtol;
  c.function_tolerance = ftol;
  c.rng_seed = seed;
  c.validate();
  return c;
}

InitStrategy init_from(const std::string& init, std::uint64_t seed, std::size_t restarts) {
  if (init == "zeros") return ZerosInit{};
  if (init == "random") return RandomInit{seed, restarts};
  throw ConfigError("init must be 'zeros' or 'random', got '" + init + "'");
}

std::vector<std::map<std::string, py::object>> profile_rows(const EnergyProfile& p) {
  std::vector<std::map<std::string, py::object>> rows;
  for (const auto& r : p.rows) {
    rows.push_back({{"meta_value", py::float_(r.meta_value)},
                    {"energy", py::float_(r.energy)},
                    {"exact", py::float_(r.exact)},
                    {"abs_err", py::float_(r.abs_err)},
                    {"rel_err", py::float_(r.rel_err)},
                    {"seed", py::int_(r.seed)},
                    {"termination", py::str(r.termination)}});
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "meta-VQE workbench core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidSizeError>(m, "InvalidSizeError", base);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<RangeError>(m, "RangeError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<BindingError>(m, "BindingError", base);
  py::register_exception<UnsupportedGeneratorError>(m, "UnsupportedGeneratorError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);

  py::class_<PauliSum>(m, "PauliSum")
      .def_property_readonly("nqubits", &PauliSum::nqubits)
      .def("__len__", [](const PauliSum& h) { return h.terms().size(); })
      .def("to_string", &PauliSum::to_string)
      .def("__str__", &PauliSum::to_string)
      .def(py::self + py::self)
      .def("scaled", &PauliSum::scaled);

  m.def("build_xxz", &build_xxz, py::arg("n"), py::arg("delta"), py::arg("field"),
        "Periodic XXZ chain with a longitudinal field.");
  m.def("parse_hamiltonian", [](const std::string& text) { return parse_hamiltonian_file(text); },
        py::arg("text"));

  py::class_<HamiltonianFamily>(m, "HamiltonianFamily")
      .def_readonly("nqubits", &HamiltonianFamily::nqubits)
      .def_readonly("parameter_names", &HamiltonianFamily::parameter_names)
      .def("__call__",
           [](const HamiltonianFamily& f, const std::vector<double>& lambda) { return f(lambda); });
  m.def("xxz_family", &xxz_family, py::arg("n"));
  m.def("parse_hamiltonian_family",
        [](const std::string& text) { return parse_hamiltonian_family(text); }, py::arg("text"));

  m.def("expectation",
        [](const std::vector<std::complex<double>>& state, const PauliSum& h) {
          std::size_t n = 0;
          while ((std::size_t{1} << n) < state.size()) ++n;
          return expectation(Statevector(n, state), h);
        },
        py::arg("state"), py::arg("h"));
  m.def("ground_energy", &ground_energy, py::arg("h"),
        "Dense diagonalisation for small registers, Lanczos otherwise.");
  m.def("ground_energy_lanczos",
        [](const PauliSum& h) { return ground_state_lanczos(h).energy; }, py::arg("h"));

  py::enum_<Encoding>(m, "Encoding")
      .value("LINEAR", Encoding::kLinear)
      .value("GAUSSIAN", Encoding::kGaussian)
      .value("GAUSSIAN_SQUARED", Encoding::kGaussianSquared);

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("nqubits", &Circuit::nqubits)
      .def_property_readonly("parameter_names", &parameter_names)
      .def_property_readonly("num_parameters",
                             [](const Circuit& c) { return c.registry().size(); })
      .def_property_readonly("initial_values",
                             [](const Circuit& c) { return c.registry().initial_values(); });
  m.def("meta_vqe_circuit", &meta_vqe_circuit, py::arg("n"), py::arg("encoding_layers"),
        py::arg("processing_layers"), py::arg("symbol") = "delta",
        py::arg("encoding") = Encoding::kLinear);
  m.def("processing_circuit", &processing_circuit, py::arg("n"), py::arg("layers"));

  m.def("bind_and_run",
        [](const Circuit& c, const MetaValues& meta, const std::vector<double>& params) {
          return amplitudes(bind_and_run(c, meta, params));
        },
        py::arg("circuit"), py::arg("meta"), py::arg("params"),
        "Output amplitudes; index bit q is qubit q.");
  m.def("energy",
        [](const Circuit& c, const PauliSum& h, const MetaValues& meta,
           const std::vector<double>& params) {
          return circuit_energy(c, h, c.resolve_meta(meta), params);
        },
        py::arg("circuit"), py::arg("h"), py::arg("meta"), py::arg("params"));
  m.def("param_shift_gradient",
        [](const Circuit& c, const PauliSum& h, const MetaValues& meta,
           const std::vector<double>& params) {
          const GradientResult r = param_shift_gradient(c, h, meta, params);
          return py::make_tuple(r.value, r.gradient);
        },
        py::arg("circuit"), py::arg("h"), py::arg("meta"), py::arg("params"),
        "Returns (energy, gradient).");

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("algorithm", &TrainResult::algorithm)
      .def_readonly("circuit", &TrainResult::circuit)
      .def_readonly("initial_params", &TrainResult::initial_params)
      .def_readonly("params", &TrainResult::params)
      .def_readonly("final_loss", &TrainResult::final_loss)
      .def_property_readonly("termination",
                             [](const TrainResult& r) {
                               return std::string(to_string(r.trace.termination));
                             })
      .def("to_json", [](const TrainResult& r) { return to_json(r).dump(); });

  m.def("train_meta_vqe",
        [](const HamiltonianFamily& family, const std::string& symbol,
           const std::vector<double>& points, const MetaValues& constants, std::size_t L1,
           std::size_t L2, Encoding encoding, const std::string& init, std::uint64_t seed,
           std::size_t max_iterations) {
          const TrainingGrid grid{symbol, points, constants};
          const auto opt = optimizer_from(max_iterations, 1e-6, 1e-10, seed);
          py::gil_scoped_release release;
          return train_meta_vqe(family, grid, family.nqubits, L1, L2, opt,
                                init_from(init, seed, 1), encoding);
        },
        py::arg("family"), py::arg("symbol"), py::arg("points"),
        py::arg("constants") = MetaValues{}, py::arg("L1") = 2, py::arg("L2") = 2,
        py::arg("encoding") = Encoding::kLinear, py::arg("init") = "random",
        py::arg("seed") = 1, py::arg("max_iterations") = 1000);
  m.def("train_ga_vqe",
        [](const HamiltonianFamily& family, const std::string& symbol,
           const std::vector<double>& points, const MetaValues& constants, std::size_t layers,
           const std::string& init, std::uint64_t seed, std::size_t max_iterations) {
          const TrainingGrid grid{symbol, points, constants};
          const auto opt = optimizer_from(max_iterations, 1e-6, 1e-10, seed);
          py::gil_scoped_release release;
          return train_ga_vqe(family, grid, family.nqubits, layers, opt,
                              init_from(init, seed, 1));
        },
        py::arg("family"), py::arg("symbol"), py::arg("points"),
        py::arg("constants") = MetaValues{}, py::arg("layers") = 4, py::arg("init") = "random",
        py::arg("seed") = 1, py::arg("max_iterations") = 1000);
  m.def("evaluate_profile",
        [](const TrainResult& r, const HamiltonianFamily& family,
           const std::vector<double>& test_points) {
          return profile_rows(evaluate_profile(r, family, test_points));
        },
        py::arg("result"), py::arg("family"), py::arg("test_points"),
        "Energy of the trained circuit at each point, with the oracle and errors.");
  m.def("equispaced", &equispaced, py::arg("start"), py::arg("stop"), py::arg("count"));

  m.def("validate_config",
        [](const std::string& text) {
          ExperimentConfig c = parse_config(text);
          c.validate();
          return c.to_text();
        },
        py::arg("text"), "Normalised key = value text; raises ConfigError.");
  m.def("run_experiment",
        [](const std::string& text) {
          ExperimentConfig c = parse_config(text);
          std::ostringstream log;
          int code;
          {
            py::gil_scoped_release release;
            code = cmd_run(c, log);
          }
          return py::make_tuple(code, log.str());
        },
        py::arg("config_text"),
        "Runs a key = value experiment; returns (exit_code, log).");
}
