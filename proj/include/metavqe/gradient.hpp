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
#include <span>
#include <vector>

#include "metavqe/circuit.hpp"
#include "metavqe/pauli.hpp"

namespace metavqe {

struct GradientResult {
  double value = 0.0;
  /// Aligned with the circuit's ParamRegistry.
  std::vector<double> gradient;
  /// Expectation evaluations spent on shifted circuits (excludes `value`).
  std::size_t shift_evaluations = 0;
};

/// Number of gates whose angle depends on a variational parameter.
std::size_t parameterized_sites(const Circuit& circuit);

/**
 * Exact gradient of <H> by the two-term shift rule.
 *
 * Every parameterized gate site g is evaluated at its angle +/- pi/2, giving
 * dE/d(theta_g) = (E+ - E-)/2, which is then chained through that site's
 * expression partials and accumulated per registry parameter. Costs exactly
 * 2 * parameterized_sites(circuit) shifted evaluations.
 *
 * Throws UnsupportedGeneratorError for a parameterized Pauli exponential whose
 * generator coefficient is not +/-1.
 */
GradientResult param_shift_gradient(const Circuit& circuit, const PauliSum& h,
                                    const MetaValues& meta,
                                    std::span<const double> params);

/// Same, with meta-symbols already resolved to slot order.
GradientResult param_shift_gradient(const Circuit& circuit, const PauliSum& h,
                                    std::span<const double> meta,
                                    std::span<const double> params);

/// Central differences in every registry parameter with the given step.
GradientResult finite_diff_gradient(const Circuit& circuit, const PauliSum& h,
                                    const MetaValues& meta,
                                    std::span<const double> params, double step);

/// <H> at the bound circuit output, meta-symbols in slot order.
double circuit_energy(const Circuit& circuit, const PauliSum& h,
                      std::span<const double> meta,
                      std::span<const double> params);

}  // namespace metavqe
