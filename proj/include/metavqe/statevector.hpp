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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metavqe/pauli.hpp"

namespace metavqe {

using Amplitude = std::complex<double>;

/// Soft upper bound on register size; 2^24 amplitudes is 256 MiB.
inline constexpr std::size_t kMaxQubits = 24;

/**
 * Dense amplitude vector over n qubits.
 *
 * Qubit q is bit q of the amplitude index (qubit 0 is the lowest-order bit).
 * The global phase is not tracked.
 */
class Statevector {
 public:
  /// |0...0>.
  explicit Statevector(std::size_t nqubits);
  Statevector(std::size_t nqubits, std::vector<Amplitude> amplitudes);

  std::size_t nqubits() const { return nqubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }

  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm_squared() const;

  /// One "index bits re im" line per amplitude; only for <= 6 qubits.
  std::string dump() const;

 private:
  std::size_t nqubits_;
  std::vector<Amplitude> amplitudes_;
};

/// bits[q] is the value of qubit q, so "100" is index 1 and "101" is index 5.
Statevector basis_state(std::size_t nqubits, std::string_view bits);

// Gates. Angles are radians with RY(t) = exp(-i t Y/2), RZ(t) = exp(-i t Z/2).
struct RotationY {
  std::size_t target;
  double angle;
};

struct RotationZ {
  std::size_t target;
  double angle;
};

struct Cnot {
  std::size_t control;
  std::size_t target;
};

/// exp(-i angle c P / 2) for the term c P.
struct PauliRotation {
  PauliTerm generator;
  double angle;
};

using Gate = std::variant<RotationY, RotationZ, Cnot, PauliRotation>;

/// Throws DimensionError for qubit indices outside the register.
void apply_gate(Statevector& state, const Gate& gate);

/// Re <psi|H|psi>. Throws DimensionError when the registers differ.
double expectation(const Statevector& state, const PauliSum& h);

/**
 * A PauliSum regrouped for repeated expectation values: the diagonal terms
 * summed into one vector over basis states, the rest grouped by X mask.
 * Agrees with expectation(state, PauliSum) up to rounding.
 */
class CompiledObservable {
 public:
  explicit CompiledObservable(const PauliSum& h);

  std::size_t nqubits() const { return nqubits_; }
  double expectation(const Statevector& state) const;

 private:
  struct FlipTerm {
    std::uint64_t z_mask;
    Amplitude weight;  // coefficient * i^(number of Y factors)
  };
  struct FlipGroup {
    std::uint64_t x_mask;
    std::vector<FlipTerm> terms;
  };

  std::size_t nqubits_;
  std::vector<double> diagonal_;
  std::vector<FlipGroup> flips_;
};

}  // namespace metavqe
