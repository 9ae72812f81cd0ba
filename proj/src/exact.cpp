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

#include "metavqe/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace metavqe {

std::string_view to_string(SpectrumMethod m) {
  return m == SpectrumMethod::kDense ? "dense" : "lanczos";
}

namespace {

using Vec = std::vector<Amplitude>;

Amplitude inner(const Vec& a, const Vec& b) {
  Amplitude s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(std::real(inner(a, a))); }

void axpy(Amplitude alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double residual_norm(const PauliSum& h, const Vec& v, double energy) {
  Vec hv(v.size());
  matvec_accumulate(h, v, hv);
  axpy(-energy, v, hv);
  return norm(hv);
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << h.nqubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.word.x_mask();
    const std::uint64_t z = term.word.z_mask();
    Amplitude base = term.coefficient;
    for (int k = 0; k < term.word.y_count(); ++k) base *= Amplitude(0.0, 1.0);
    for (std::size_t j = 0; j < dim; ++j) {
      m(j ^ x, j) += (std::popcount(j & z) & 1) ? -base : base;
    }
  }
  return m;
}

struct Ritz {
  double value;
  Eigen::VectorXd vector;  // coefficients in the Krylov basis
};

Ritz lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta,
                 std::size_t k) {
  Eigen::VectorXd diag(k);
  Eigen::VectorXd sub(k > 0 ? k - 1 : 0);
  for (std::size_t i = 0; i < k; ++i) diag[i] = alpha[i];
  for (std::size_t i = 0; i + 1 < k; ++i) sub[i] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

Vec random_start(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  constexpr double kScale = 0x1.0p-53;
  Vec v(dim);
  for (auto& a : v) {
    const double re = static_cast<double>(engine() >> 11) * kScale - 0.5;
    const double im = static_cast<double>(engine() >> 11) * kScale - 0.5;
    a = {re, im};
  }
  const double n = norm(v);
  for (auto& a : v) a /= n;
  return v;
}

}  // namespace

SpectrumResult ground_state_dense(const PauliSum& h) {
  if (h.nqubits() > kMaxDenseQubits) {
    throw InvalidSizeError(fmt::format(
        "dense diagonalisation is limited to {} qubits (got {}); use Lanczos",
        kMaxDenseQubits, h.nqubits()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
  if (es.info() != Eigen::Success) {
    throw Error("dense eigensolver failed");
  }
  SpectrumResult out;
  out.method = SpectrumMethod::kDense;
  out.energy = es.eigenvalues()[0];
  Vec v(es.eigenvectors().rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = es.eigenvectors()(i, 0);
  out.residual = residual_norm(h, v, out.energy);
  out.state.emplace(h.nqubits(), std::move(v));
  return out;
}

SpectrumResult ground_state_lanczos(const PauliSum& h,
                                    const LanczosOptions& options) {
  if (!(options.tol > 0.0)) throw Error("Lanczos tolerance must be positive");
  if (options.max_krylov < 1) throw Error("Lanczos needs max_krylov >= 1");
  const std::size_t dim = std::size_t{1} << h.nqubits();
  const std::size_t max_k = std::min(options.max_krylov, dim);

  Vec start = random_start(dim, options.seed);
  SpectrumResult best;
  best.method = SpectrumMethod::kLanczos;
  best.residual = std::numeric_limits<double>::infinity();

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    std::vector<Vec> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.push_back(start);

    for (std::size_t j = 0; j < max_k; ++j) {
      Vec w(dim);
      matvec_accumulate(h, basis[j], w);
      alpha.push_back(std::real(inner(basis[j], w)));
      // Full reorthogonalisation, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& v : basis) axpy(-inner(v, w), v, w);
      }
      const double b = norm(w);
      beta.push_back(b);

      const std::size_t k = j + 1;
      const bool exhausted = k == max_k;
      const bool invariant = b <= 1e-12 * std::max(1.0, std::abs(alpha[j]));
      const bool check = invariant || exhausted || k % 5 == 0 || k <= 4;
      if (check) {
        Ritz ritz = lowest_ritz(alpha, beta, k);
        const double estimate = b * std::abs(ritz.vector[k - 1]);
        if (estimate < options.tol || invariant || exhausted) {
          Vec y(dim);
          for (std::size_t i = 0; i < k; ++i) axpy(ritz.vector[i], basis[i], y);
          const double ny = norm(y);
          for (auto& a : y) a /= ny;
          const double r = residual_norm(h, y, ritz.value);
          if (r < best.residual) {
            best.energy = ritz.value;
            best.residual = r;
            best.state.emplace(h.nqubits(), y);
          }
          if (r < options.tol) return best;
          if (invariant || exhausted) {
            start = std::move(y);
            break;
          }
        }
      }
      for (auto& a : w) a /= b;
      basis.push_back(std::move(w));
    }
  }
  throw ConvergenceError(
      fmt::format("Lanczos did not reach residual {} (best {})", options.tol,
                  best.residual),
      best);
}

SpectrumResult ground_state_lanczos(const PauliSum& h, std::size_t max_krylov,
                                    double tol, std::uint64_t seed) {
  LanczosOptions opts;
  opts.max_krylov = max_krylov;
  opts.tol = tol;
  opts.seed = seed;
  return ground_state_lanczos(h, opts);
}

double ground_energy(const PauliSum& h) {
  if (h.nqubits() <= kMaxDenseQubits) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h),
                                                       Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("dense eigensolver failed");
    return es.eigenvalues()[0];
  }
  return ground_state_lanczos(h).energy;
}

}  // namespace metavqe
