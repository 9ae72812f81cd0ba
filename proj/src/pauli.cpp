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

#include "metavqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "metavqe/error.hpp"
#include "metavqe/statevector.hpp"
#include "text_util.hpp"

namespace metavqe {

char to_char(Pauli p) {
  switch (p) {
    case Pauli::X:
      return 'X';
    case Pauli::Y:
      return 'Y';
    case Pauli::Z:
      return 'Z';
  }
  return '?';
}

PauliWord::PauliWord(std::vector<PauliFactor> factors)
    : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (i > 0 && factors_[i - 1].qubit == f.qubit) {
      throw RangeError(fmt::format("qubit {} appears twice in Pauli word",
                                   f.qubit));
    }
    if (f.qubit >= 64) {
      throw RangeError(fmt::format("qubit index {} too large", f.qubit));
    }
    const std::uint64_t bit = std::uint64_t{1} << f.qubit;
    if (f.op == Pauli::X || f.op == Pauli::Y) x_mask_ |= bit;
    if (f.op == Pauli::Z || f.op == Pauli::Y) z_mask_ |= bit;
    if (f.op == Pauli::Y) ++y_count_;
  }
}

std::size_t PauliWord::min_qubits() const {
  return factors_.empty() ? 0 : factors_.back().qubit + 1;
}

std::string PauliWord::to_string() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += ' ';
    out += to_char(f.op);
    out += std::to_string(f.qubit);
  }
  return out;
}

namespace {

PauliFactor parse_factor(std::string_view token) {
  if (token.size() < 2) {
    throw Error(fmt::format("bad Pauli factor '{}'", token));
  }
  Pauli op;
  switch (token[0]) {
    case 'X':
      op = Pauli::X;
      break;
    case 'Y':
      op = Pauli::Y;
      break;
    case 'Z':
      op = Pauli::Z;
      break;
    default:
      throw Error(fmt::format("bad Pauli factor '{}'", token));
  }
  std::uint32_t qubit = 0;
  const char* first = token.data() + 1;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, qubit);
  if (ec != std::errc{} || ptr != last) {
    throw Error(fmt::format("bad qubit index in '{}'", token));
  }
  return {qubit, op};
}

// Parses the factor tokens of one line, converting failures into ParseError /
// RangeError with the line number attached.
PauliWord parse_word_tokens(std::span<const std::string_view> tokens,
                            std::size_t line, std::size_t nqubits) {
  std::vector<PauliFactor> factors;
  factors.reserve(tokens.size());
  for (auto tok : tokens) {
    try {
      factors.push_back(parse_factor(tok));
    } catch (const Error& e) {
      throw ParseError(line, e.what());
    }
    if (factors.back().qubit >= nqubits) {
      throw RangeError(fmt::format("line {}: qubit index {} out of range for {} qubits",
                                   line, factors.back().qubit, nqubits));
    }
  }
  try {
    return PauliWord(std::move(factors));
  } catch (const RangeError& e) {
    throw ParseError(line, e.what());
  }
}

double parse_coefficient(std::string_view token, std::size_t line) {
  auto value = detail::parse_double(token);
  if (!value) {
    throw ParseError(line, fmt::format("coefficient '{}' is not a real number",
                                       token));
  }
  if (!std::isfinite(*value)) {
    throw ParseError(line, fmt::format("coefficient '{}' is not finite", token));
  }
  return *value;
}

std::size_t parse_qubits_header(std::span<const std::string_view> tokens,
                                std::size_t line) {
  if (tokens.size() != 2) {
    throw ParseError(line, "expected 'qubits <n>'");
  }
  auto n = detail::parse_unsigned(tokens[1]);
  if (!n || *n == 0) {
    throw ParseError(line, fmt::format("bad qubit count '{}'", tokens[1]));
  }
  if (*n > kMaxQubits) {
    throw ParseError(line, fmt::format("qubit count {} exceeds limit {}", *n,
                                       kMaxQubits));
  }
  return *n;
}

struct FamilyText {
  std::size_t nqubits = 0;
  std::string parameter;
  std::vector<PauliTerm> constant;
  std::vector<PauliTerm> scaled;
};

FamilyText parse_family_text(std::string_view text, bool allow_parameter) {
  FamilyText out;
  std::size_t line_no = 0;
  for (auto raw : detail::split_lines(text)) {
    ++line_no;
    auto tokens = detail::tokenize(detail::strip_comment(raw));
    if (tokens.empty()) continue;
    if (tokens[0] == "qubits") {
      if (out.nqubits != 0) throw ParseError(line_no, "duplicate qubits header");
      out.nqubits = parse_qubits_header(tokens, line_no);
      continue;
    }
    if (tokens[0] == "parameter") {
      if (!allow_parameter) {
        throw ParseError(line_no, "'parameter' header not allowed here");
      }
      if (tokens.size() != 2 || !out.parameter.empty()) {
        throw ParseError(line_no, "expected a single 'parameter <name>'");
      }
      if (detail::parse_double(tokens[1])) {
        throw ParseError(line_no, "parameter name must not be a number");
      }
      out.parameter = std::string(tokens[1]);
      continue;
    }
    if (out.nqubits == 0) {
      throw ParseError(line_no, "term before 'qubits <n>' header");
    }
    std::span<const std::string_view> rest(tokens);
    bool scaled = false;
    if (!out.parameter.empty() && rest[0] == out.parameter) {
      scaled = true;
      rest = rest.subspan(1);
      if (rest.empty()) throw ParseError(line_no, "missing coefficient");
    }
    PauliTerm term;
    term.coefficient = parse_coefficient(rest[0], line_no);
    term.word = parse_word_tokens(rest.subspan(1), line_no, out.nqubits);
    (scaled ? out.scaled : out.constant).push_back(std::move(term));
  }
  if (out.nqubits == 0) throw ParseError(0, "missing 'qubits <n>' header");
  if (allow_parameter && out.parameter.empty()) {
    throw ParseError(0, "missing 'parameter <name>' header");
  }
  return out;
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

}  // namespace

PauliWord parse_pauli_word(std::string_view text) {
  auto tokens = detail::tokenize(text);
  std::vector<PauliFactor> factors;
  for (auto tok : tokens) factors.push_back(parse_factor(tok));
  return PauliWord(std::move(factors));
}

PauliSum::PauliSum(std::size_t nqubits, std::vector<PauliTerm> terms)
    : nqubits_(nqubits) {
  if (nqubits == 0) throw InvalidSizeError("PauliSum needs at least one qubit");
  if (nqubits > kMaxQubits) {
    throw InvalidSizeError(fmt::format("{} qubits exceeds limit {}", nqubits,
                                       kMaxQubits));
  }
  std::map<PauliWord, double> merged;
  for (auto& t : terms) {
    if (!std::isfinite(t.coefficient)) {
      throw Error("non-finite Pauli coefficient");
    }
    if (t.word.min_qubits() > nqubits) {
      throw RangeError(fmt::format("term {} does not fit {} qubits",
                                   t.word.to_string(), nqubits));
    }
    merged[std::move(t.word)] += t.coefficient;
  }
  terms_.reserve(merged.size());
  for (auto& [word, c] : merged) {
    if (c != 0.0) terms_.push_back({c, word});
  }
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  if (other.nqubits_ != nqubits_) {
    throw DimensionError("adding PauliSums on different registers");
  }
  std::vector<PauliTerm> all(terms_);
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PauliSum(nqubits_, std::move(all));
}

PauliSum PauliSum::scaled(double factor) const {
  std::vector<PauliTerm> out(terms_);
  for (auto& t : out) t.coefficient *= factor;
  return PauliSum(nqubits_, std::move(out));
}

std::string PauliSum::to_string() const {
  std::string out = fmt::format("qubits {}\n", nqubits_);
  for (const auto& t : terms_) {
    if (t.word.is_identity()) {
      out += fmt::format("{}\n", t.coefficient);
    } else {
      out += fmt::format("{} {}\n", t.coefficient, t.word.to_string());
    }
  }
  return out;
}

PauliSum build_xxz(std::size_t n, double delta, double field) {
  if (n < 2) {
    throw InvalidSizeError(fmt::format("XXZ chain needs n >= 2, got {}", n));
  }
  std::vector<PauliTerm> terms;
  terms.reserve(4 * n);
  auto two_body = [](Pauli p, std::size_t a, std::size_t b) {
    return PauliWord({{static_cast<std::uint32_t>(a), p},
                      {static_cast<std::uint32_t>(b), p}});
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    terms.push_back({1.0, two_body(Pauli::X, i, j)});
    terms.push_back({1.0, two_body(Pauli::Y, i, j)});
    terms.push_back({delta, two_body(Pauli::Z, i, j)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    terms.push_back({field, PauliWord({{static_cast<std::uint32_t>(i), Pauli::Z}})});
  }
  return PauliSum(n, std::move(terms));
}

PauliSum parse_hamiltonian_file(std::string_view text) {
  auto parsed = parse_family_text(text, /*allow_parameter=*/false);
  return PauliSum(parsed.nqubits, std::move(parsed.constant));
}

HamiltonianFamily parse_hamiltonian_family(std::string_view text) {
  auto parsed = parse_family_text(text, /*allow_parameter=*/true);
  // A family without constant terms is legal; PauliSum handles empty lists.
  PauliSum base(parsed.nqubits, std::move(parsed.constant));
  PauliSum scaled(parsed.nqubits, std::move(parsed.scaled));
  return affine_family(std::move(base), std::move(scaled), parsed.parameter);
}

void matvec_accumulate(const PauliSum& h, std::span<const Amplitude> in,
                       std::span<Amplitude> out) {
  const std::size_t dim = std::size_t{1} << h.nqubits();
  if (in.size() != dim || out.size() != dim) {
    throw DimensionError(fmt::format(
        "matvec: operator on {} qubits, vectors of length {} and {}",
        h.nqubits(), in.size(), out.size()));
  }
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    const Amplitude base = term.coefficient * i_power(term.word.y_count());
    // P|j> = i^ny (-1)^{popcount(j & z)} |j ^ x>
    for (std::size_t j = 0; j < dim; ++j) {
      const Amplitude v = in[j];
      const bool negative = std::popcount(j & z) & 1;
      out[j ^ x] += negative ? -base * v : base * v;
    }
  }
}

Statevector matvec(const PauliSum& h, const Statevector& v) {
  if (h.nqubits() != v.nqubits()) {
    throw DimensionError(fmt::format("matvec: operator on {} qubits, state on {}",
                                     h.nqubits(), v.nqubits()));
  }
  Statevector out(v.nqubits(), std::vector<Amplitude>(v.size()));
  matvec_accumulate(h, v.amplitudes(), out.amplitudes());
  return out;
}

std::size_t HamiltonianFamily::parameter_index(std::string_view name) const {
  for (std::size_t i = 0; i < parameter_names.size(); ++i) {
    if (parameter_names[i] == name) return i;
  }
  throw BindingError(fmt::format("Hamiltonian family has no parameter '{}'", name));
}

PauliSum HamiltonianFamily::operator()(std::span<const double> lambda) const {
  if (lambda.size() != parameter_names.size()) {
    throw DimensionError(fmt::format("family expects {} parameters, got {}",
                                     parameter_names.size(), lambda.size()));
  }
  return builder(lambda);
}

HamiltonianFamily xxz_family(std::size_t n) {
  if (n < 2) {
    throw InvalidSizeError(fmt::format("XXZ chain needs n >= 2, got {}", n));
  }
  return {n, {"delta", "field"}, [n](std::span<const double> p) {
            return build_xxz(n, p[0], p[1]);
          }};
}

HamiltonianFamily affine_family(PauliSum base, PauliSum scaled,
                                std::string name) {
  if (base.nqubits() != scaled.nqubits()) {
    throw DimensionError("affine family parts act on different registers");
  }
  const std::size_t n = base.nqubits();
  return {n, {std::move(name)},
          [base = std::move(base), scaled = std::move(scaled)](
              std::span<const double> p) { return base + scaled.scaled(p[0]); }};
}

}  // namespace metavqe
