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

#include "metavqe/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <utility>

#include <fmt/format.h>

#include "metavqe/error.hpp"

namespace metavqe {

namespace {

void check_register(std::size_t nqubits) {
  if (nqubits == 0) throw InvalidSizeError("statevector needs at least one qubit");
  if (nqubits > kMaxQubits) {
    throw InvalidSizeError(fmt::format("{} qubits exceeds limit {}", nqubits,
                                       kMaxQubits));
  }
}

void check_qubit(const Statevector& s, std::size_t q) {
  if (q >= s.nqubits()) {
    throw DimensionError(fmt::format("qubit {} out of range for {} qubits", q,
                                     s.nqubits()));
  }
}

bool odd_parity(std::uint64_t v) { return std::popcount(v) & 1; }

// Plain product; operator* on std::complex goes through the Annex G NaN
// recovery path, which dominates the inner loops.
inline Amplitude mul(Amplitude a, Amplitude b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

// i^k for k mod 4.
Amplitude i_power(int k) {
  switch (k & 3) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

void apply_ry(Statevector& s, std::size_t target, double angle) {
  const double c = std::cos(angle / 2);
  const double sn = std::sin(angle / 2);
  const std::size_t mask = std::size_t{1} << target;
  auto amps = s.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += 2 * mask) {
    for (std::size_t i = base; i < base + mask; ++i) {
      const Amplitude a0 = amps[i];
      const Amplitude a1 = amps[i | mask];
      amps[i] = c * a0 - sn * a1;
      amps[i | mask] = sn * a0 + c * a1;
    }
  }
}

void apply_rz(Statevector& s, std::size_t target, double angle) {
  const double c = std::cos(angle / 2);
  const double sn = std::sin(angle / 2);
  const Amplitude up(c, -sn);
  const Amplitude down(c, sn);
  const std::size_t mask = std::size_t{1} << target;
  auto amps = s.amplitudes();
  for (std::size_t base = 0; base < amps.size(); base += 2 * mask) {
    for (std::size_t i = base; i < base + mask; ++i) {
      amps[i] = mul(amps[i], up);
      amps[i | mask] = mul(amps[i | mask], down);
    }
  }
}

void apply_cnot(Statevector& s, std::size_t control, std::size_t target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  auto amps = s.amplitudes();
  // Visit each index with the control set and the target clear exactly once.
  const std::size_t fixed = cmask | tmask;
  for (std::size_t rest = 0; rest < amps.size(); rest = ((rest | fixed) + 1) & ~fixed) {
    const std::size_t i = rest | cmask;
    std::swap(amps[i], amps[i | tmask]);
  }
}

void apply_pauli_rotation(Statevector& s, const PauliTerm& generator,
                          double angle) {
  const PauliWord& word = generator.word;
  const double theta = angle * generator.coefficient;
  const double c = std::cos(theta / 2);
  const double sn = std::sin(theta / 2);
  const std::uint64_t x = word.x_mask();
  const std::uint64_t z = word.z_mask();
  auto amps = s.amplitudes();

  if (x == 0) {
    // Diagonal generator: P|i> = (-1)^{popcount(i & z)} |i>.
    const Amplitude plus(c, -sn);
    const Amplitude minus(c, sn);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      amps[i] = mul(amps[i], odd_parity(i & z) ? minus : plus);
    }
    return;
  }

  // exp(-i t P/2) = c - i s P, and P|j> = i^ny (-1)^{popcount(j & z)} |j ^ x>.
  const Amplitude minus_i_s = Amplitude(0.0, -sn) * i_power(word.y_count());
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(x));
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & pivot) continue;
    const std::size_t j = i ^ x;
    const Amplitude ai = amps[i];
    const Amplitude aj = amps[j];
    const Amplitude from_j = odd_parity(j & z) ? -aj : aj;
    const Amplitude from_i = odd_parity(i & z) ? -ai : ai;
    amps[i] = c * ai + mul(minus_i_s, from_j);
    amps[j] = c * aj + mul(minus_i_s, from_i);
  }
}

}  // namespace

Statevector::Statevector(std::size_t nqubits) : nqubits_(nqubits) {
  check_register(nqubits);
  amplitudes_.assign(std::size_t{1} << nqubits, Amplitude{});
  amplitudes_[0] = 1.0;
}

Statevector::Statevector(std::size_t nqubits, std::vector<Amplitude> amplitudes)
    : nqubits_(nqubits), amplitudes_(std::move(amplitudes)) {
  check_register(nqubits);
  if (amplitudes_.size() != (std::size_t{1} << nqubits)) {
    throw DimensionError(fmt::format("{} amplitudes given for {} qubits",
                                     amplitudes_.size(), nqubits));
  }
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

std::string Statevector::dump() const {
  if (nqubits_ > 6) {
    throw InvalidSizeError("amplitude dump is limited to 6 qubits");
  }
  std::string out;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    std::string bits;
    for (std::size_t q = 0; q < nqubits_; ++q) bits += (i >> q) & 1 ? '1' : '0';
    out += fmt::format("{} {} {:.12g} {:.12g}\n", i, bits, amplitudes_[i].real(),
                       amplitudes_[i].imag());
  }
  return out;
}

Statevector basis_state(std::size_t nqubits, std::string_view bits) {
  if (bits.size() != nqubits) {
    throw DimensionError(fmt::format("bitstring '{}' has length {}, expected {}",
                                     bits, bits.size(), nqubits));
  }
  std::size_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      index |= std::size_t{1} << q;
    } else if (bits[q] != '0') {
      throw Error(fmt::format("bitstring '{}' contains a non-binary digit", bits));
    }
  }
  Statevector s(nqubits);
  s[0] = 0.0;
  s[index] = 1.0;
  return s;
}

void apply_gate(Statevector& state, const Gate& gate) {
  struct Visitor {
    Statevector& s;
    void operator()(const RotationY& g) const {
      check_qubit(s, g.target);
      apply_ry(s, g.target, g.angle);
    }
    void operator()(const RotationZ& g) const {
      check_qubit(s, g.target);
      apply_rz(s, g.target, g.angle);
    }
    void operator()(const Cnot& g) const {
      check_qubit(s, g.control);
      check_qubit(s, g.target);
      if (g.control == g.target) {
        throw DimensionError("CNOT control and target coincide");
      }
      apply_cnot(s, g.control, g.target);
    }
    void operator()(const PauliRotation& g) const {
      if (g.generator.word.min_qubits() > s.nqubits()) {
        throw DimensionError(fmt::format("generator {} does not fit {} qubits",
                                         g.generator.word.to_string(),
                                         s.nqubits()));
      }
      apply_pauli_rotation(s, g.generator, g.angle);
    }
  };
  std::visit(Visitor{state}, gate);
}

double expectation(const Statevector& state, const PauliSum& h) {
  if (state.nqubits() != h.nqubits()) {
    throw DimensionError(fmt::format(
        "expectation: state on {} qubits, operator on {}", state.nqubits(),
        h.nqubits()));
  }
  const auto amps = state.amplitudes();
  Amplitude total{};
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    if (x == 0) {
      double acc = 0.0;
      for (std::size_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        acc += odd_parity(i & z) ? -p : p;
      }
      total += term.coefficient * acc;
      continue;
    }
    // <psi|P|psi> = sum_j conj(a_{j^x}) i^ny (-1)^{popcount(j & z)} a_j
    Amplitude acc{};
    for (std::size_t j = 0; j < amps.size(); ++j) {
      const Amplitude v = std::conj(amps[j ^ x]) * amps[j];
      acc += odd_parity(j & z) ? -v : v;
    }
    total += term.coefficient * i_power(term.word.y_count()) * acc;
  }
  assert(std::abs(total.imag()) < 1e-10);
  return total.real();
}

CompiledObservable::CompiledObservable(const PauliSum& h) : nqubits_(h.nqubits()) {
  check_register(nqubits_);
  const std::size_t dim = std::size_t{1} << nqubits_;
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    if (x == 0) {
      if (diagonal_.empty()) diagonal_.assign(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i) {
        diagonal_[i] += odd_parity(i & z) ? -term.coefficient : term.coefficient;
      }
      continue;
    }
    auto group = std::find_if(flips_.begin(), flips_.end(),
                              [x](const FlipGroup& g) { return g.x_mask == x; });
    if (group == flips_.end()) group = flips_.insert(flips_.end(), FlipGroup{x, {}});
    group->terms.push_back({z, term.coefficient * i_power(term.word.y_count())});
  }
}

double CompiledObservable::expectation(const Statevector& state) const {
  if (state.nqubits() != nqubits_) {
    throw DimensionError(fmt::format(
        "expectation: state on {} qubits, operator on {}", state.nqubits(), nqubits_));
  }
  const auto amps = state.amplitudes();
  double total = 0.0;
  if (!diagonal_.empty()) {
    for (std::size_t i = 0; i < amps.size(); ++i) total += diagonal_[i] * std::norm(amps[i]);
  }
  // A Hermitian sum pairs j with j^x, so each pair is visited once and doubled.
  for (const auto& group : flips_) {
    const std::uint64_t x = group.x_mask;
    const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(x));
    Amplitude acc{};
    for (std::size_t base = 0; base < amps.size(); base += 2 * pivot) {
      for (std::size_t j = base; j < base + pivot; ++j) {
        Amplitude w{};
        for (const auto& t : group.terms) w += odd_parity(j & t.z_mask) ? -t.weight : t.weight;
        acc += mul(mul(std::conj(amps[j ^ x]), w), amps[j]);
      }
    }
    total += 2.0 * acc.real();
  }
  return total;
}

}  // namespace metavqe
