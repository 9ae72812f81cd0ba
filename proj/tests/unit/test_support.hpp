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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "metavqe/circuit.hpp"
#include "metavqe/pauli.hpp"
#include "metavqe/statevector.hpp"

namespace metavqe::testing {

using cplx = std::complex<double>;

// Row-major dense matrix built from Kronecker products of 2x2 Pauli blocks,
// with qubit 0 as the fastest-varying tensor factor.
struct Dense {
  std::size_t dim = 0;
  std::vector<cplx> a;

  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cplx at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Dense pauli_block(char p) {
  const cplx i{0, 1};
  Dense m{2, {1, 0, 0, 1}};
  if (p == 'X') m.a = {0, 1, 1, 0};
  if (p == 'Y') m.a = {0, -i, i, 0};
  if (p == 'Z') m.a = {1, 0, 0, -1};
  return m;
}

inline Dense kron(const Dense& hi, const Dense& lo) {
  Dense out{hi.dim * lo.dim, std::vector<cplx>(hi.dim * lo.dim * hi.dim * lo.dim)};
  for (std::size_t r1 = 0; r1 < hi.dim; ++r1)
    for (std::size_t c1 = 0; c1 < hi.dim; ++c1)
      for (std::size_t r2 = 0; r2 < lo.dim; ++r2)
        for (std::size_t c2 = 0; c2 < lo.dim; ++c2)
          out.at(r1 * lo.dim + r2, c1 * lo.dim + c2) = hi.at(r1, c1) * lo.at(r2, c2);
  return out;
}

inline Dense dense_matrix(const PauliSum& h) {
  const std::size_t n = h.nqubits();
  const std::size_t dim = std::size_t{1} << n;
  Dense total{dim, std::vector<cplx>(dim * dim)};
  for (const auto& term : h.terms()) {
    std::string letters(n, 'I');
    for (const auto& f : term.word.factors()) letters[f.qubit] = to_char(f.op);
    Dense m = pauli_block(letters[0]);
    for (std::size_t q = 1; q < n; ++q) m = kron(pauli_block(letters[q]), m);
    for (std::size_t k = 0; k < m.a.size(); ++k) total.a[k] += term.coefficient * m.a[k];
  }
  return total;
}

inline std::vector<cplx> apply(const Dense& m, std::span<const cplx> v) {
  std::vector<cplx> out(m.dim);
  for (std::size_t r = 0; r < m.dim; ++r)
    for (std::size_t c = 0; c < m.dim; ++c) out[r] += m.at(r, c) * v[c];
  return out;
}

inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool coin() { return index(2) == 1; }

  PauliWord word(std::size_t n, bool allow_identity = true) {
    std::vector<PauliFactor> f;
    while (true) {
      f.clear();
      for (std::uint32_t q = 0; q < n; ++q) {
        const auto p = index(4);
        if (p != 0) f.push_back({q, static_cast<Pauli>(p)});
      }
      if (allow_identity || !f.empty()) return PauliWord(f);
    }
  }

  PauliSum pauli_sum(std::size_t n, std::size_t terms) {
    std::vector<PauliTerm> t;
    for (std::size_t k = 0; k < terms; ++k) t.push_back({real(-1, 1), word(n)});
    return PauliSum(n, t);
  }

  Statevector state(std::size_t n) {
    std::vector<cplx> a(std::size_t{1} << n);
    double norm = 0;
    for (auto& x : a) {
      x = {real(-1, 1), real(-1, 1)};
      norm += std::norm(x);
    }
    for (auto& x : a) x /= std::sqrt(norm);
    return Statevector(n, a);
  }

  std::vector<double> params(std::size_t size, double scale = 3.0) {
    std::vector<double> p(size);
    for (auto& x : p) x = real(-scale, scale);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace metavqe::testing
