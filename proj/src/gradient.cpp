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

#include "metavqe/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "metavqe/error.hpp"
#include "metavqe/statevector.hpp"

namespace metavqe {

namespace {

// Copy of `gate` with its angle moved by `shift`. For a Pauli exponential with
// generator c P (c = +/-1) the angle multiplies c, so the shift is divided by
// it to move the effective angle by exactly `shift`.
Gate shifted(const Gate& gate, double shift) {
  Gate out = gate;
  std::visit(
      [shift](auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RotationY> || std::is_same_v<T, RotationZ>) {
          g.angle += shift;
        } else if constexpr (std::is_same_v<T, PauliRotation>) {
          g.angle += shift / g.generator.coefficient;
        }
      },
      out);
  return out;
}

}  // namespace

std::size_t parameterized_sites(const Circuit& circuit) {
  return static_cast<std::size_t>(
      std::count_if(circuit.gates().begin(), circuit.gates().end(),
                    [](const GateTemplate& g) { return g.is_parameterized(); }));
}

double circuit_energy(const Circuit& circuit, const PauliSum& h,
                      std::span<const double> meta,
                      std::span<const double> params) {
  Statevector state = circuit.initial_state();
  for (const auto& gate : metavqe::bind(circuit, meta, params)) apply_gate(state, gate);
  return expectation(state, h);
}

GradientResult param_shift_gradient(const Circuit& circuit, const PauliSum& h,
                                    std::span<const double> meta,
                                    std::span<const double> params) {
  if (h.nqubits() != circuit.nqubits()) {
    throw DimensionError(fmt::format("operator on {} qubits, circuit on {}",
                                     h.nqubits(), circuit.nqubits()));
  }
  const auto templates = circuit.gates();
  const auto gates = metavqe::bind(circuit, meta, params);

  for (const auto& t : templates) {
    if (t.type == GateType::kPauliExp && t.is_parameterized() &&
        std::abs(t.generator.coefficient) != 1.0) {
      throw UnsupportedGeneratorError(fmt::format(
          "shift rule needs a single Pauli word generator, got {} * {}",
          t.generator.coefficient, t.generator.word.to_string()));
    }
  }

  GradientResult result;
  result.gradient.assign(circuit.registry().size(), 0.0);
  const CompiledObservable observable(h);

  // `prefix` holds the state before gate g; each shifted evaluation copies it
  // and replays only the suffix.
  Statevector prefix = circuit.initial_state();
  Statevector scratch = prefix;
  constexpr double kShift = std::numbers::pi / 2;
  for (std::size_t g = 0; g < gates.size(); ++g) {
    if (templates[g].is_parameterized()) {
      double energies[2];
      for (int side = 0; side < 2; ++side) {
        scratch = prefix;
        apply_gate(scratch, shifted(gates[g], side == 0 ? kShift : -kShift));
        for (std::size_t k = g + 1; k < gates.size(); ++k) {
          apply_gate(scratch, gates[k]);
        }
        energies[side] = observable.expectation(scratch);
        ++result.shift_evaluations;
      }
      double d_angle = 0.5 * (energies[0] - energies[1]);
      if (templates[g].type == GateType::kPauliExp) {
        d_angle *= templates[g].generator.coefficient;
      }
      const auto partials = eval_param_expr(templates[g].angle, meta, params);
      for (const auto& p : partials.partials()) {
        result.gradient[p.param.index] += d_angle * p.value;
      }
    }
    apply_gate(prefix, gates[g]);
  }
  result.value = observable.expectation(prefix);
  return result;
}

GradientResult param_shift_gradient(const Circuit& circuit, const PauliSum& h,
                                    const MetaValues& meta,
                                    std::span<const double> params) {
  const auto resolved = circuit.resolve_meta(meta);
  return param_shift_gradient(circuit, h, std::span<const double>(resolved),
                              params);
}

GradientResult finite_diff_gradient(const Circuit& circuit, const PauliSum& h,
                                    const MetaValues& meta,
                                    std::span<const double> params, double step) {
  if (!(step > 0.0)) throw Error("finite-difference step must be positive");
  const auto resolved = circuit.resolve_meta(meta);
  GradientResult result;
  result.value = circuit_energy(circuit, h, resolved, params);
  std::vector<double> x(params.begin(), params.end());
  result.gradient.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + step;
    const double up = circuit_energy(circuit, h, resolved, x);
    x[i] = x0 - step;
    const double down = circuit_energy(circuit, h, resolved, x);
    x[i] = x0;
    result.gradient[i] = (up - down) / (2.0 * step);
    result.shift_evaluations += 2;
  }
  return result;
}

}  // namespace metavqe
