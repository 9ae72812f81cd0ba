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

#include "metavqe/circuit.hpp"

#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "metavqe/error.hpp"
#include "text_util.hpp"

namespace metavqe {

std::string_view to_string(Partition p) {
  return p == Partition::kEncoding ? "encoding" : "processing";
}

ParamHandle ParamRegistry::add(std::string name, Partition partition,
                               double initial_value, bool random_start) {
  if (index_.contains(name)) {
    throw Error(fmt::format("parameter '{}' already registered", name));
  }
  const std::size_t i = entries_.size();
  index_.emplace(name, i);
  entries_.push_back({std::move(name), partition, initial_value, random_start});
  return {i};
}

std::size_t ParamRegistry::count(Partition partition) const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.partition == partition;
  return n;
}

std::optional<ParamHandle> ParamRegistry::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return ParamHandle{it->second};
}

std::vector<double> ParamRegistry::initial_values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.initial_value);
  return out;
}

ExprValue eval_param_expr(const ParamExpr& e, std::span<const double> meta,
                          std::span<const double> params) {
  ExprValue out;
  auto push = [&out](ParamHandle h, double v) {
    out.partial_storage[out.partial_count++] = {h, v};
  };
  if (const auto* c = std::get_if<expr::Const>(&e)) {
    out.value = c->value;
  } else if (const auto* v = std::get_if<expr::Var>(&e)) {
    out.value = params[v->param.index];
    push(v->param, 1.0);
  } else if (const auto* l = std::get_if<expr::Linear>(&e)) {
    const double x = meta[l->symbol.index];
    out.value = params[l->weight.index] * x + params[l->bias.index];
    push(l->weight, x);
    push(l->bias, 1.0);
  } else {
    const auto& g = std::get<expr::Gaussian>(e);
    const double x = meta[g.symbol.index];
    const double alpha = params[g.alpha.index];
    const double beta = params[g.beta.index];
    const double gamma = params[g.gamma.index];
    const double u = gamma - x;
    const double arg = g.squared ? u * u : u;
    const double ex = std::exp(beta * arg);
    out.value = alpha * ex + params[g.delta.index];
    push(g.alpha, ex);
    push(g.beta, alpha * arg * ex);
    push(g.gamma, g.squared ? 2.0 * alpha * beta * u * ex : alpha * beta * ex);
    push(g.delta, 1.0);
  }
  return out;
}

bool GateTemplate::is_parameterized() const {
  return type != GateType::kCnot && !std::holds_alternative<expr::Const>(angle);
}

Circuit::Circuit(std::size_t nqubits) : nqubits_(nqubits) {
  if (nqubits == 0) throw InvalidSizeError("circuit needs at least one qubit");
  if (nqubits > kMaxQubits) {
    throw InvalidSizeError(fmt::format("{} qubits exceeds limit {}", nqubits,
                                       kMaxQubits));
  }
}

void Circuit::set_reference(std::string bits) {
  if (bits.size() != nqubits_) {
    throw DimensionError(fmt::format("reference '{}' has {} bits, circuit has {} qubits",
                                     bits, bits.size(), nqubits_));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(fmt::format("reference '{}' is not a bitstring", bits));
    }
  }
  reference_ = std::move(bits);
}

MetaSymbol Circuit::add_meta_symbol(std::string name) {
  if (auto existing = find_meta_symbol(name)) return *existing;
  meta_symbols_.push_back(std::move(name));
  return {meta_symbols_.size() - 1};
}

std::optional<MetaSymbol> Circuit::find_meta_symbol(std::string_view name) const {
  for (std::size_t i = 0; i < meta_symbols_.size(); ++i) {
    if (meta_symbols_[i] == name) return MetaSymbol{i};
  }
  return std::nullopt;
}

void Circuit::check_qubit(std::size_t q) const {
  if (q >= nqubits_) {
    throw DimensionError(fmt::format("qubit {} out of range for {} qubits", q,
                                     nqubits_));
  }
}

void Circuit::check_expr(const ParamExpr& e) const {
  auto param = [this](ParamHandle h) {
    if (h.index >= registry_.size()) {
      throw Error(fmt::format("parameter handle {} not in registry", h.index));
    }
  };
  auto symbol = [this](MetaSymbol s) {
    if (s.index >= meta_symbols_.size()) {
      throw Error(fmt::format("meta-symbol {} not declared", s.index));
    }
  };
  if (const auto* v = std::get_if<expr::Var>(&e)) {
    param(v->param);
  } else if (const auto* l = std::get_if<expr::Linear>(&e)) {
    param(l->weight);
    param(l->bias);
    symbol(l->symbol);
  } else if (const auto* g = std::get_if<expr::Gaussian>(&e)) {
    param(g->alpha);
    param(g->beta);
    param(g->gamma);
    param(g->delta);
    symbol(g->symbol);
  }
}

void Circuit::add_ry(std::size_t target, ParamExpr angle) {
  check_qubit(target);
  check_expr(angle);
  gates_.push_back({GateType::kRY, target, 0, {}, angle});
}

void Circuit::add_rz(std::size_t target, ParamExpr angle) {
  check_qubit(target);
  check_expr(angle);
  gates_.push_back({GateType::kRZ, target, 0, {}, angle});
}

void Circuit::add_cnot(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw DimensionError("CNOT control and target coincide");
  gates_.push_back({GateType::kCnot, target, control, {}, expr::Const{0.0}});
}

void Circuit::add_pauli_exp(PauliTerm generator, ParamExpr angle) {
  if (generator.word.min_qubits() > nqubits_) {
    throw RangeError(fmt::format("generator {} does not fit {} qubits",
                                 generator.word.to_string(), nqubits_));
  }
  check_expr(angle);
  gates_.push_back({GateType::kPauliExp, 0, 0, std::move(generator), angle});
}

std::vector<double> Circuit::resolve_meta(const MetaValues& values) const {
  std::vector<double> out;
  out.reserve(meta_symbols_.size());
  for (const auto& name : meta_symbols_) {
    auto it = values.find(name);
    if (it == values.end()) {
      throw BindingError(fmt::format("meta-symbol '{}' is unbound", name));
    }
    out.push_back(it->second);
  }
  return out;
}

Statevector Circuit::initial_state() const {
  return reference_.empty() ? Statevector(nqubits_)
                            : basis_state(nqubits_, reference_);
}

std::vector<Gate> bind(const Circuit& circuit, std::span<const double> meta,
                       std::span<const double> params) {
  if (params.size() != circuit.registry().size()) {
    throw DimensionError(fmt::format("circuit has {} parameters, got {}",
                                     circuit.registry().size(), params.size()));
  }
  if (meta.size() != circuit.meta_symbols().size()) {
    throw DimensionError(fmt::format("circuit has {} meta-symbols, got {}",
                                     circuit.meta_symbols().size(), meta.size()));
  }
  std::vector<Gate> out;
  out.reserve(circuit.gates().size());
  for (const auto& g : circuit.gates()) {
    const double angle =
        g.type == GateType::kCnot ? 0.0 : eval_param_expr(g.angle, meta, params).value;
    switch (g.type) {
      case GateType::kRY:
        out.emplace_back(RotationY{g.target, angle});
        break;
      case GateType::kRZ:
        out.emplace_back(RotationZ{g.target, angle});
        break;
      case GateType::kCnot:
        out.emplace_back(Cnot{g.control, g.target});
        break;
      case GateType::kPauliExp:
        out.emplace_back(PauliRotation{g.generator, angle});
        break;
    }
  }
  return out;
}

Statevector bind_and_run(const Circuit& circuit, const MetaValues& meta,
                         std::span<const double> params) {
  const auto resolved = circuit.resolve_meta(meta);
  Statevector state = circuit.initial_state();
  for (const auto& gate : metavqe::bind(circuit, resolved, params)) apply_gate(state, gate);
  return state;
}

std::string_view to_string(Encoding e) {
  switch (e) {
    case Encoding::kLinear:
      return "linear";
    case Encoding::kGaussian:
      return "gaussian";
    case Encoding::kGaussianSquared:
      return "gaussian-squared";
  }
  return "?";
}

Encoding parse_encoding(std::string_view name) {
  if (name == "linear") return Encoding::kLinear;
  if (name == "gaussian") return Encoding::kGaussian;
  if (name == "gaussian-squared") return Encoding::kGaussianSquared;
  throw ConfigError(fmt::format("unknown encoding '{}'", name));
}

namespace {

void check_layered(const Circuit& c) {
  if (c.nqubits() < 2) {
    throw InvalidSizeError(fmt::format("layered ansatz needs n >= 2, got {}",
                                       c.nqubits()));
  }
}

void add_cnot_ring(Circuit& c) {
  const std::size_t n = c.nqubits();
  for (std::size_t q = 0; q < n; ++q) c.add_cnot(q, (q + 1) % n);
}

// First layer index whose names are still free for `prefix`.
std::size_t next_layer(const Circuit& c, std::string_view prefix) {
  std::size_t l = 0;
  while (c.registry().find(fmt::format("{}{}.q0.rz", prefix, l)) ||
         c.registry().find(fmt::format("{}{}.q0.rz.w", prefix, l)) ||
         c.registry().find(fmt::format("{}{}.q0.rz.alpha", prefix, l))) {
    ++l;
  }
  return l;
}

ParamExpr encoded_angle(Circuit& c, const std::string& base, MetaSymbol symbol,
                        Encoding encoding) {
  auto& reg = c.registry();
  if (encoding == Encoding::kLinear) {
    auto w = reg.add(base + ".w", Partition::kEncoding, 0.0, false);
    auto phi = reg.add(base + ".phi", Partition::kEncoding);
    return expr::Linear{w, symbol, phi};
  }
  auto alpha = reg.add(base + ".alpha", Partition::kEncoding, 0.0, false);
  auto beta = reg.add(base + ".beta", Partition::kEncoding, 1.0, false);
  auto gamma = reg.add(base + ".gamma", Partition::kEncoding, 1.0, false);
  auto delta = reg.add(base + ".delta", Partition::kEncoding, 0.0);
  return expr::Gaussian{alpha, beta, gamma, delta, symbol,
                        encoding == Encoding::kGaussianSquared};
}

}  // namespace

void add_encoding_layers(Circuit& circuit, std::size_t layers,
                         MetaSymbol symbol, Encoding encoding) {
  check_layered(circuit);
  const std::size_t first = next_layer(circuit, "enc");
  for (std::size_t l = first; l < first + layers; ++l) {
    for (std::size_t q = 0; q < circuit.nqubits(); ++q) {
      auto rz = encoded_angle(circuit, fmt::format("enc{}.q{}.rz", l, q), symbol,
                              encoding);
      auto ry = encoded_angle(circuit, fmt::format("enc{}.q{}.ry", l, q), symbol,
                              encoding);
      circuit.add_ry(q, ry);
      circuit.add_rz(q, rz);
    }
    add_cnot_ring(circuit);
  }
}

void add_processing_layers(Circuit& circuit, std::size_t layers) {
  check_layered(circuit);
  auto& reg = circuit.registry();
  const std::size_t first = next_layer(circuit, "proc");
  for (std::size_t l = first; l < first + layers; ++l) {
    for (std::size_t q = 0; q < circuit.nqubits(); ++q) {
      auto rz = reg.add(fmt::format("proc{}.q{}.rz", l, q), Partition::kProcessing);
      auto ry = reg.add(fmt::format("proc{}.q{}.ry", l, q), Partition::kProcessing);
      circuit.add_ry(q, expr::Var{ry});
      circuit.add_rz(q, expr::Var{rz});
    }
    add_cnot_ring(circuit);
  }
}

Circuit meta_vqe_circuit(std::size_t n, std::size_t encoding_layers,
                         std::size_t processing_layers, std::string symbol,
                         Encoding encoding) {
  Circuit c(n);
  auto s = c.add_meta_symbol(std::move(symbol));
  add_encoding_layers(c, encoding_layers, s, encoding);
  add_processing_layers(c, processing_layers);
  return c;
}

Circuit processing_circuit(std::size_t n, std::size_t layers) {
  Circuit c(n);
  add_processing_layers(c, layers);
  return c;
}

GeneratorSet parse_generator_file(std::string_view text) {
  GeneratorSet out;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens[0] == "qubits") {
      auto n = tokens.size() == 2 ? detail::parse_unsigned(tokens[1]) : std::nullopt;
      if (!n || *n == 0 || *n > kMaxQubits || out.nqubits != 0) {
        throw ParseError(line_no, "expected a single 'qubits <n>'");
      }
      out.nqubits = *n;
      continue;
    }
    if (tokens[0] == "reference") {
      if (tokens.size() != 2 || !out.reference.empty()) {
        throw ParseError(line_no, "expected a single 'reference <bits>'");
      }
      out.reference = std::string(tokens[1]);
      continue;
    }
    if (out.nqubits == 0) {
      throw ParseError(line_no, "generator before 'qubits <n>' header");
    }
    if (tokens.size() < 2) {
      throw ParseError(line_no, "expected '<param-name> <P><idx> ...'");
    }
    std::string rest;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      rest += tokens[i];
      rest += ' ';
    }
    PauliWord word;
    try {
      word = parse_pauli_word(rest);
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
    if (word.min_qubits() > out.nqubits) {
      throw RangeError(fmt::format("line {}: generator {} out of range for {} qubits",
                                   line_no, word.to_string(), out.nqubits));
    }
    out.generators.push_back({std::string(tokens[0]), {1.0, std::move(word)}});
  }
  if (out.nqubits == 0) throw ParseError(0, "missing 'qubits <n>' header");
  if (out.reference.empty()) out.reference.assign(out.nqubits, '0');
  if (out.reference.size() != out.nqubits) {
    throw ParseError(0, fmt::format("reference '{}' does not have {} bits",
                                    out.reference, out.nqubits));
  }
  return out;
}

Circuit build_ucc_circuit(const GeneratorSet& generators,
                          const UccOptions& options) {
  if (options.repetitions == 0) {
    throw InvalidSizeError("UCC circuit needs at least one repetition");
  }
  Circuit c(generators.nqubits);
  c.set_reference(generators.reference);
  std::optional<MetaSymbol> symbol;
  if (options.encoding != AngleEncoding::kPlain) {
    symbol = c.add_meta_symbol(options.symbol);
  }
  // Angle expression per parameter name, created on first use.
  std::map<std::string, ParamExpr> angles;
  auto angle_for = [&](const std::string& name) -> ParamExpr {
    if (auto it = angles.find(name); it != angles.end()) return it->second;
    auto& reg = c.registry();
    ParamExpr e;
    switch (options.encoding) {
      case AngleEncoding::kPlain:
        e = expr::Var{reg.add(name, Partition::kProcessing)};
        break;
      case AngleEncoding::kLinear: {
        auto w = reg.add(name + ".w", Partition::kEncoding, 0.0, false);
        auto phi = reg.add(name + ".phi", Partition::kEncoding);
        e = expr::Linear{w, *symbol, phi};
        break;
      }
      case AngleEncoding::kGaussian:
      case AngleEncoding::kGaussianSquared: {
        auto alpha = reg.add(name + ".alpha", Partition::kEncoding, 0.0, false);
        auto beta = reg.add(name + ".beta", Partition::kEncoding, 1.0, false);
        auto gamma = reg.add(name + ".gamma", Partition::kEncoding, 1.0, false);
        auto delta = reg.add(name + ".delta", Partition::kEncoding, 0.0);
        e = expr::Gaussian{alpha, beta, gamma, delta, *symbol,
                           options.encoding == AngleEncoding::kGaussianSquared};
        break;
      }
    }
    angles.emplace(name, e);
    return e;
  };
  for (std::size_t r = 0; r < options.repetitions; ++r) {
    for (const auto& g : generators.generators) {
      const std::string name = options.share_across_repetitions
                                   ? g.param_name
                                   : fmt::format("{}.r{}", g.param_name, r);
      c.add_pauli_exp(g.generator, angle_for(name));
    }
  }
  return c;
}

}  // namespace metavqe
