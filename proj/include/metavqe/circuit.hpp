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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "metavqe/pauli.hpp"
#include "metavqe/statevector.hpp"

namespace metavqe {

/// Index of a variational parameter in a ParamRegistry.
struct ParamHandle {
  std::size_t index;
  auto operator<=>(const ParamHandle&) const = default;
};

/// Index of a Hamiltonian-parameter slot (meta-symbol) in a Circuit.
struct MetaSymbol {
  std::size_t index;
  auto operator<=>(const MetaSymbol&) const = default;
};

/// Encoding parameters (Phi) depend on the meta-symbols, processing
/// parameters (Theta) do not.
enum class Partition { kEncoding, kProcessing };

std::string_view to_string(Partition p);

/**
 * Ordered, uniquely named set of variational parameters. The order is the
 * layout of every parameter vector handed to the circuit and the optimizer.
 */
class ParamRegistry {
 public:
  struct Entry {
    std::string name;
    Partition partition;
    double initial_value;
    /// False for weights multiplying a meta-symbol: random starts keep
    /// initial_value so the starting state does not depend on the symbol.
    bool random_start = true;
  };

  /// Throws Error if `name` is taken.
  ParamHandle add(std::string name, Partition partition,
                  double initial_value = 0.0, bool random_start = true);

  std::size_t size() const { return entries_.size(); }
  std::size_t count(Partition partition) const;
  const Entry& operator[](ParamHandle h) const { return entries_.at(h.index); }
  std::span<const Entry> entries() const { return entries_; }
  std::optional<ParamHandle> find(std::string_view name) const;
  std::vector<double> initial_values() const;

 private:
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

namespace expr {

struct Const {
  double value;
};

struct Var {
  ParamHandle param;
};

/// weight * x + bias
struct Linear {
  ParamHandle weight;
  MetaSymbol symbol;
  ParamHandle bias;
};

/// alpha * exp(beta * (gamma - x)) + delta, or with (gamma - x)^2 in the
/// exponent when `squared` is set.
struct Gaussian {
  ParamHandle alpha;
  ParamHandle beta;
  ParamHandle gamma;
  ParamHandle delta;
  MetaSymbol symbol;
  bool squared = false;
};

}  // namespace expr

using ParamExpr = std::variant<expr::Const, expr::Var, expr::Linear, expr::Gaussian>;

struct Partial {
  ParamHandle param;
  double value;
};

/// Angle value plus d(angle)/d(param) for every parameter the expression
/// references. A handle used twice in one expression appears twice.
struct ExprValue {
  double value = 0.0;
  std::array<Partial, 4> partial_storage{};
  std::size_t partial_count = 0;

  std::span<const Partial> partials() const {
    return {partial_storage.data(), partial_count};
  }
};

ExprValue eval_param_expr(const ParamExpr& e, std::span<const double> meta,
                          std::span<const double> params);

/// Meta-symbol values by name, e.g. {{"delta", 0.3}}.
using MetaValues = std::map<std::string, double, std::less<>>;

enum class GateType { kRY, kRZ, kCnot, kPauliExp };

struct GateTemplate {
  GateType type;
  std::size_t target = 0;
  std::size_t control = 0;
  PauliTerm generator;  // kPauliExp only
  ParamExpr angle = expr::Const{0.0};

  /// True when the angle depends on a variational parameter.
  bool is_parameterized() const;
};

/**
 * Gate list whose angles are parameter expressions over a shared registry
 * and a list of named meta-symbols. Runs from |0...0> or from a declared
 * computational-basis reference.
 */
class Circuit {
 public:
  explicit Circuit(std::size_t nqubits);

  std::size_t nqubits() const { return nqubits_; }

  /// Throws DimensionError if `bits` does not have nqubits characters.
  void set_reference(std::string bits);
  const std::string& reference() const { return reference_; }

  /// Returns the existing slot if `name` is already declared.
  MetaSymbol add_meta_symbol(std::string name);
  std::optional<MetaSymbol> find_meta_symbol(std::string_view name) const;
  std::span<const std::string> meta_symbols() const { return meta_symbols_; }

  ParamRegistry& registry() { return registry_; }
  const ParamRegistry& registry() const { return registry_; }

  void add_ry(std::size_t target, ParamExpr angle);
  void add_rz(std::size_t target, ParamExpr angle);
  void add_cnot(std::size_t control, std::size_t target);
  void add_pauli_exp(PauliTerm generator, ParamExpr angle);

  std::span<const GateTemplate> gates() const { return gates_; }

  /// Meta-symbol values in slot order. Extra names are ignored; a missing
  /// one throws BindingError.
  std::vector<double> resolve_meta(const MetaValues& values) const;

  Statevector initial_state() const;

 private:
  void check_expr(const ParamExpr& e) const;
  void check_qubit(std::size_t q) const;

  std::size_t nqubits_;
  std::string reference_;
  std::vector<std::string> meta_symbols_;
  ParamRegistry registry_;
  std::vector<GateTemplate> gates_;
};

/// Evaluates every angle; throws DimensionError on a parameter-count
/// mismatch.
std::vector<Gate> bind(const Circuit& circuit, std::span<const double> meta,
                       std::span<const double> params);

/// The final state U(params) S(meta, params) |initial>.
Statevector bind_and_run(const Circuit& circuit, const MetaValues& meta,
                         std::span<const double> params);

enum class Encoding { kLinear, kGaussian, kGaussianSquared };

std::string_view to_string(Encoding e);
/// "linear", "gaussian" or "gaussian-squared"; throws ConfigError otherwise.
Encoding parse_encoding(std::string_view name);

/**
 * Appends `layers` encoding layers: on every qubit RY then RZ (the product
 * RZ(a) RY(b)), each angle an encoding of `symbol`, followed by the CNOT ring
 * (0,1), (1,2), ..., (n-1,0). Registry order is rz before ry.
 * The linear encoding adds 4n fresh parameters per layer (w and phi for each
 * rotation), the Gaussian ones 8n (alpha, beta, gamma, delta).
 */
void add_encoding_layers(Circuit& circuit, std::size_t layers,
                         MetaSymbol symbol, Encoding encoding = Encoding::kLinear);

/// Appends `layers` processing layers: RY then RZ on every qubit, then the
/// CNOT ring. 2n fresh parameters per layer.
void add_processing_layers(Circuit& circuit, std::size_t layers);

/// L1 encoding layers in `symbol` followed by L2 processing layers.
Circuit meta_vqe_circuit(std::size_t n, std::size_t encoding_layers,
                         std::size_t processing_layers,
                         std::string symbol = "delta",
                         Encoding encoding = Encoding::kLinear);

/// `layers` processing layers only: the GA-VQE and standard VQE ansatz.
Circuit processing_circuit(std::size_t n, std::size_t layers);

struct UccGenerator {
  std::string param_name;
  PauliTerm generator;
};

struct GeneratorSet {
  std::size_t nqubits = 0;
  std::string reference;
  std::vector<UccGenerator> generators;
};

/**
 * Generator file:
 *
 *     qubits 4
 *     reference 1100
 *     t0 Y0 X1
 *     t1 X0 X1 Y2 X3
 *
 * One generator per line; lines sharing a parameter name share an angle.
 */
GeneratorSet parse_generator_file(std::string_view text);

/// How each named UCC angle is parametrised.
enum class AngleEncoding { kPlain, kLinear, kGaussian, kGaussianSquared };

struct UccOptions {
  std::size_t repetitions = 1;
  /// Reuse the same parameters in every repetition instead of fresh ones.
  bool share_across_repetitions = false;
  AngleEncoding encoding = AngleEncoding::kPlain;
  std::string symbol = "d";
};

/**
 * Reference basis state followed by `repetitions` blocks of Pauli
 * exponentials, one per generator. Parameters start at zero, except the
 * Gaussian beta and gamma, which start at one so every angle is initially 0.
 */
Circuit build_ucc_circuit(const GeneratorSet& generators,
                          const UccOptions& options = {});

}  // namespace metavqe
