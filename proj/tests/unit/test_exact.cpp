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

#include <gtest/gtest.h>

#include <cmath>

#include "metavqe/error.hpp"
#include "metavqe/exact.hpp"
#include "test_support.hpp"

namespace metavqe {
namespace {

using testing::cplx;
using testing::Gen;

PauliSum open_pair(double delta, double field) {
  return PauliSum(2, {{1.0, parse_pauli_word("X0 X1")},
                      {1.0, parse_pauli_word("Y0 Y1")},
                      {delta, parse_pauli_word("Z0 Z1")},
                      {field, parse_pauli_word("Z0")},
                      {field, parse_pauli_word("Z1")}});
}

double residual(const PauliSum& h, const SpectrumResult& r) {
  const Statevector hv = matvec(h, *r.state);
  double s = 0;
  for (std::size_t i = 0; i < hv.size(); ++i) s += std::norm(hv[i] - r.energy * (*r.state)[i]);
  return std::sqrt(s);
}

TEST(Dense, SingleZ) {
  const PauliSum h(1, {{1.0, parse_pauli_word("Z0")}});
  const SpectrumResult r = ground_state_dense(h);
  EXPECT_NEAR(r.energy, -1.0, 1e-14);
  EXPECT_NEAR(std::abs((*r.state)[1]), 1.0, 1e-14);
  EXPECT_EQ(r.method, SpectrumMethod::kDense);
}

TEST(Dense, OpenPairAnalyticGround) {
  EXPECT_NEAR(ground_state_dense(open_pair(0, 0)).energy, -2.0, 1e-12);
  Gen gen(61);
  for (int trial = 0; trial < 10; ++trial) {
    const double d = gen.real(-2, 2), f = gen.real(-2, 2);
    const double want = std::min({d + 2 * f, d - 2 * f, -d + 2, -d - 2});
    EXPECT_NEAR(ground_state_dense(open_pair(d, f)).energy, want, 1e-10);
  }
}

TEST(Dense, ResidualContract) {
  Gen gen(62);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + gen.index(6);
    const PauliSum h = gen.pauli_sum(n, 1 + gen.index(12));
    const SpectrumResult r = ground_state_dense(h);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_LT(residual(h, r), 1e-10);
  }
}

TEST(Dense, RefusesLargeRegisters) {
  EXPECT_THROW(ground_state_dense(build_xxz(11, 0.5, 0.75)), InvalidSizeError);
}

TEST(Dense, EightSiteReferenceAgreesWithLanczos) {
  const PauliSum h = build_xxz(8, 0.5, 0.75);
  const double dense = ground_state_dense(h).energy;
  const SpectrumResult lz = ground_state_lanczos(h);
  EXPECT_NEAR(dense, lz.energy, 1e-8);
  EXPECT_LT(dense, 8 * (0.5 - 0.75));
}

TEST(Lanczos, AgreesWithDenseOnRandomSums) {
  Gen gen(63);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen.index(6);
    const PauliSum h = gen.pauli_sum(n, 1 + gen.index(15));
    const SpectrumResult d = ground_state_dense(h);
    const SpectrumResult l = ground_state_lanczos(h);
    EXPECT_NEAR(d.energy, l.energy, 1e-8) << "trial " << trial;
    EXPECT_EQ(l.method, SpectrumMethod::kLanczos);
    EXPECT_LT(residual(h, l), 1e-8);
  }
}

TEST(Lanczos, DegenerateIsotropicChain) {
  const PauliSum h = build_xxz(4, 1.0, 0.0);
  const SpectrumResult l = ground_state_lanczos(h, 300, 1e-10, 7);
  EXPECT_NEAR(l.energy, ground_state_dense(h).energy, 1e-8);
  EXPECT_LT(l.residual, 1e-10);
  EXPECT_LT(residual(h, l), 1e-9);
}

TEST(Lanczos, FourteenSitesBelowProductBound) {
  const PauliSum h = build_xxz(14, -1.1, 0.75);
  const SpectrumResult l = ground_state_lanczos(h);
  EXPECT_LE(l.energy, 14 * (-1.1 - 0.75) + 1e-9);
  EXPECT_LT(l.residual, 1e-10);
}

TEST(Lanczos, ZeroOperatorAndTinyRegisters) {
  const SpectrumResult z = ground_state_lanczos(PauliSum(3, {}));
  EXPECT_EQ(z.energy, 0.0);
  const PauliSum x(1, {{2.0, parse_pauli_word("X0")}});
  EXPECT_NEAR(ground_state_lanczos(x).energy, -2.0, 1e-12);
}

TEST(Lanczos, ReportsNonConvergenceWithBestEstimate) {
  LanczosOptions opt;
  opt.max_krylov = 3;
  opt.max_restarts = 0;
  opt.tol = 1e-14;
  try {
    ground_state_lanczos(build_xxz(8, 0.3, 0.75), opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best().energy));
    EXPECT_GE(e.best().energy, ground_state_dense(build_xxz(8, 0.3, 0.75)).energy - 1e-9);
  }
}

TEST(Lanczos, Deterministic) {
  const PauliSum h = build_xxz(6, 0.2, 0.75);
  EXPECT_EQ(ground_state_lanczos(h).energy, ground_state_lanczos(h).energy);
}

TEST(GroundEnergy, DispatchesBySize) {
  EXPECT_NEAR(ground_energy(build_xxz(4, -1.1, 0.75)), 4 * (-1.1 - 0.75), 1e-10);
  EXPECT_NEAR(ground_energy(build_xxz(12, -1.1, 0.75)), 12 * (-1.1 - 0.75), 1e-8);
}

TEST(SpectrumMethod, Names) {
  EXPECT_EQ(to_string(SpectrumMethod::kDense), "dense");
  EXPECT_EQ(to_string(SpectrumMethod::kLanczos), "lanczos");
}

}  // namespace
}  // namespace metavqe
