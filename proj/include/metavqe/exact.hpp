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
#include <optional>
#include <string_view>

#include "metavqe/error.hpp"
#include "metavqe/pauli.hpp"
#include "metavqe/statevector.hpp"

namespace metavqe {

/// Largest register handled by dense diagonalisation.
inline constexpr std::size_t kMaxDenseQubits = 10;

enum class SpectrumMethod { kDense, kLanczos };

std::string_view to_string(SpectrumMethod m);

struct SpectrumResult {
  double energy = 0.0;
  std::optional<Statevector> state;
  SpectrumMethod method = SpectrumMethod::kDense;
  /// ||H v - E v|| for the returned pair (v normalised).
  double residual = 0.0;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SpectrumResult best)
      : Error(what), best_(std::move(best)) {}
  const SpectrumResult& best() const { return best_; }

 private:
  SpectrumResult best_;
};

/// Full Hermitian eigensolve of the 2^n x 2^n matrix. Throws InvalidSizeError
/// above kMaxDenseQubits; use ground_state_lanczos() there.
SpectrumResult ground_state_dense(const PauliSum& h);

struct LanczosOptions {
  std::size_t max_krylov = 300;
  double tol = 1e-10;
  std::uint64_t seed = 12345;
  /// Restarts from the current Ritz vector once max_krylov is exhausted.
  std::size_t max_restarts = 10;
};

/**
 * Lowest eigenpair by matrix-free Lanczos with full reorthogonalisation from
 * a seeded random start vector. Converged when the explicit residual of the
 * Ritz pair is below `tol`; otherwise ConvergenceError carries the best
 * estimate.
 */
SpectrumResult ground_state_lanczos(const PauliSum& h,
                                    const LanczosOptions& options = {});

SpectrumResult ground_state_lanczos(const PauliSum& h, std::size_t max_krylov,
                                    double tol, std::uint64_t seed);

/// Ground energy only: dense up to kMaxDenseQubits, Lanczos above.
double ground_energy(const PauliSum& h);

}  // namespace metavqe
