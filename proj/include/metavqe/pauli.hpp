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

#include <compare>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace metavqe {

class Statevector;

enum class Pauli : std::uint8_t { X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

struct PauliFactor {
  std::uint32_t qubit;
  Pauli op;

  auto operator<=>(const PauliFactor&) const = default;
};

/**
 * A tensor product of single-qubit Pauli operators with implicit identity on
 * every qubit that is not listed.
 *
 * Factors are kept sorted by qubit index, so two words compare equal exactly
 * when they denote the same operator, and the lexicographic order (qubit,
 * then letter) is the canonical print order. An empty word is the identity.
 */
class PauliWord {
 public:
  PauliWord() = default;

  /// Throws RangeError on a repeated qubit index.
  explicit PauliWord(std::vector<PauliFactor> factors);

  std::span<const PauliFactor> factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }

  /// Smallest register size the word fits into (0 for the identity).
  std::size_t min_qubits() const;

  /// Bits of qubits carrying X or Y (the operator flips these bits).
  std::uint64_t x_mask() const { return x_mask_; }
  /// Bits of qubits carrying Z or Y (these contribute a sign).
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const { return y_count_; }

  /// "X0 Y3", or "" for the identity.
  std::string to_string() const;

  friend bool operator==(const PauliWord& a, const PauliWord& b) {
    return a.factors_ == b.factors_;
  }
  friend auto operator<=>(const PauliWord& a, const PauliWord& b) {
    return a.factors_ <=> b.factors_;
  }

 private:
  std::vector<PauliFactor> factors_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  int y_count_ = 0;
};

/// Parses "X0 Z2 Y5" style factor lists.
PauliWord parse_pauli_word(std::string_view text);

struct PauliTerm {
  double coefficient = 1.0;
  PauliWord word;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/**
 * A real-weighted sum of Pauli words on a fixed register: a Hermitian
 * operator by construction.
 *
 * Terms with identical words are merged by adding coefficients, terms whose
 * merged coefficient is exactly zero are dropped, and the remaining terms are
 * stored in canonical word order. Immutable after construction.
 */
class PauliSum {
 public:
  PauliSum() = default;

  /// Throws InvalidSizeError if `nqubits` is 0, RangeError if a term does
  /// not fit the register, and Error for a non-finite coefficient.
  PauliSum(std::size_t nqubits, std::vector<PauliTerm> terms);

  std::size_t nqubits() const { return nqubits_; }
  std::span<const PauliTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  PauliSum operator+(const PauliSum& other) const;
  PauliSum scaled(double factor) const;

  /// Serialises in the Hamiltonian file format; parse_hamiltonian_file()
  /// reproduces the same sum term for term.
  std::string to_string() const;

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  std::size_t nqubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/**
 * Periodic XXZ chain with a longitudinal field,
 *   sum_i (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1}) + field sum_i Z_i,
 * with qubit n identified with qubit 0. For n = 2 the bonds (0,1) and (1,0)
 * coincide and are merged, doubling the two-body coefficients.
 */
PauliSum build_xxz(std::size_t n, double delta, double field);

/**
 * Reads the Hamiltonian text format:
 *
 *     # comment
 *     qubits 4
 *     -0.5 Z0 Z1
 *     0.25 X0 Y1 X2 Y3
 *     1.2
 *
 * A `qubits <n>` header must precede the terms. A line holding only a
 * coefficient is an identity term. LF and CRLF line ends are accepted.
 */
PauliSum parse_hamiltonian_file(std::string_view text);

/// H v evaluated term by term; no matrix is formed.
Statevector matvec(const PauliSum& h, const Statevector& v);

/// Accumulating kernel: out += H in. Spans must both have 2^nqubits entries.
void matvec_accumulate(const PauliSum& h,
                       std::span<const std::complex<double>> in,
                       std::span<std::complex<double>> out);

/// A map from a named parameter vector to a PauliSum on a fixed register.
struct HamiltonianFamily {
  std::size_t nqubits = 0;
  std::vector<std::string> parameter_names;
  std::function<PauliSum(std::span<const double>)> builder;

  /// Index of `name` in parameter_names; throws BindingError if absent.
  std::size_t parameter_index(std::string_view name) const;

  /// Throws DimensionError if `lambda` does not match parameter_names.
  PauliSum operator()(std::span<const double> lambda) const;
};

/// XXZ family with parameters {"delta", "field"}.
HamiltonianFamily xxz_family(std::size_t n);

/// H(s) = base + s * scaled, with a single parameter `name`.
HamiltonianFamily affine_family(PauliSum base, PauliSum scaled,
                                std::string name);

/**
 * Hamiltonian file with one scalar parameter:
 *
 *     qubits 2
 *     parameter d
 *     1.0 X0 X1        # constant part
 *     d 0.5 Z0         # multiplied by d
 *
 * Lines that start with the parameter name belong to the scaled term set.
 */
HamiltonianFamily parse_hamiltonian_family(std::string_view text);

}  // namespace metavqe
