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
#include <numbers>

#include "metavqe/error.hpp"
#include "metavqe/gradient.hpp"
#include "test_support.hpp"

namespace metavqe {
namespace {

using testing::Gen;
constexpr double kPi = std::numbers::pi;

Circuit single_ry() {
  Circuit c(1);
  c.add_ry(0, expr::Var{c.registry().add("theta", Partition::kProcessing)});
  return c;
}

const PauliSum& z0() {
  static const PauliSum h(1, {{1.0, parse_pauli_word("Z0")}});
  return h;
}

TEST(ParamShift, SingleRotationClosedForm) {
  const Circuit c = single_ry();
  const GradientResult r = param_shift_gradient(c, z0(), MetaValues{}, std::vector{kPi / 2});
  EXPECT_NEAR(r.value, 0.0, 1e-15);
  ASSERT_EQ(r.gradient.size(), 1u);
  EXPECT_NEAR(r.gradient[0], -1.0, 1e-15);
  EXPECT_EQ(r.shift_evaluations, 2u);
}

TEST(ParamShift, LinearChainRule) {
  Circuit c(1);
  const MetaSymbol d = c.add_meta_symbol("delta");
  const auto w = c.registry().add("w", Partition::kEncoding);
  const auto phi = c.registry().add("phi", Partition::kEncoding);
  c.add_ry(0, expr::Linear{w, d, phi});
  const GradientResult r =
      param_shift_gradient(c, z0(), {{"delta", 2.0}}, std::vector{0.0, kPi / 2});
  EXPECT_NEAR(r.gradient[0], -2.0, 1e-14);
  EXPECT_NEAR(r.gradient[1], -1.0, 1e-14);
}

TEST(FiniteDiff, SingleRotation) {
  const GradientResult r =
      finite_diff_gradient(single_ry(), z0(), {}, std::vector{kPi / 2}, 1e-4);
  EXPECT_NEAR(r.gradient[0], -1.0, 1e-8);
}

TEST(FiniteDiff, ConstantEnergyCircuitGivesZero) {
  Circuit c(3);
  c.add_cnot(0, 1);
  c.add_cnot(1, 2);
  // Z rotations on |000> only change a global phase.
  c.add_rz(0, expr::Var{c.registry().add("a", Partition::kProcessing)});
  c.add_rz(2, expr::Var{c.registry().add("b", Partition::kProcessing)});
  const GradientResult r =
      finite_diff_gradient(c, build_xxz(3, 0.4, 0.75), {}, std::vector{0.3, -1.2}, 1e-4);
  for (double g : r.gradient) EXPECT_NEAR(g, 0.0, 1e-12);
}

TEST(ParamShift, RejectsScaledGenerators) {
  Circuit c(2);
  c.add_pauli_exp({0.5, parse_pauli_word("X0 Y1")},
                  expr::Var{c.registry().add("t", Partition::kProcessing)});
  EXPECT_THROW(param_shift_gradient(c, build_xxz(2, 1, 0), MetaValues{}, std::vector{0.1}),
               UnsupportedGeneratorError);
}

TEST(ParamShift, NegativeUnitGeneratorIsSupported) {
  Circuit c(2);
  c.set_reference("10");
  c.add_pauli_exp({-1.0, parse_pauli_word("Y0 X1")},
                  expr::Var{c.registry().add("t", Partition::kProcessing)});
  const PauliSum h = build_xxz(2, 0.3, 0.5);
  const std::vector p{0.7};
  const auto ps = param_shift_gradient(c, h, MetaValues{}, p);
  const auto fd = finite_diff_gradient(c, h, {}, p, 1e-5);
  EXPECT_NEAR(ps.gradient[0], fd.gradient[0], 1e-8);
}

TEST(ParamShift, ValueMatchesBoundExpectation) {
  Gen gen(41);
  const Circuit c = meta_vqe_circuit(4, 2, 2);
  const auto p = gen.params(c.registry().size());
  const PauliSum h = build_xxz(4, 0.3, 0.75);
  const GradientResult r = param_shift_gradient(c, h, {{"delta", 0.3}}, p);
  // Same state; the value is summed in a different order.
  EXPECT_NEAR(r.value, expectation(bind_and_run(c, {{"delta", 0.3}}, p), h), 1e-12);
}

TEST(GradientProperty, EvaluationCountIsTwicePerSite) {
  Gen gen(42);
  for (std::size_t n = 2; n <= 5; ++n) {
    const Circuit c = meta_vqe_circuit(n, 1, 2, "delta", Encoding::kGaussian);
    const auto p = gen.params(c.registry().size(), 1.0);
    const GradientResult r =
        param_shift_gradient(c, build_xxz(n, 0.1, 0.75), {{"delta", 0.2}}, p);
    EXPECT_EQ(parameterized_sites(c), 2 * n * 3);
    EXPECT_EQ(r.shift_evaluations, 2 * parameterized_sites(c));
    EXPECT_EQ(r.gradient.size(), c.registry().size());
  }
}

TEST(GradientProperty, ParamShiftMatchesFiniteDifferences) {
  Gen gen(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen.index(4);
    const Encoding enc = trial % 3 == 0   ? Encoding::kLinear
                         : trial % 3 == 1 ? Encoding::kGaussian
                                          : Encoding::kGaussianSquared;
    const Circuit c = meta_vqe_circuit(n, 1 + gen.index(2), 1 + gen.index(2), "delta", enc);
    const auto p = gen.params(c.registry().size(), enc == Encoding::kLinear ? 3.0 : 0.8);
    const MetaValues meta{{"delta", gen.real(-1.1, 1.1)}};
    const PauliSum h = build_xxz(n, gen.real(-1.1, 1.1), 0.75);
    const auto ps = param_shift_gradient(c, h, meta, p);
    const auto fd = finite_diff_gradient(c, h, meta, p, 1e-4);
    for (std::size_t i = 0; i < p.size(); ++i) {
      EXPECT_NEAR(ps.gradient[i], fd.gradient[i], 1e-6) << "trial " << trial << " param " << i;
    }
  }
}

TEST(GradientProperty, SharedUccParametersMatchFiniteDifferences) {
  Gen gen(44);
  const GeneratorSet gs = parse_generator_file(
      "qubits 4\nreference 0011\nt0 Y0 X2\nt1 X0 X1 Y2 X3\nt0 Y1 X3\nt2 X1 Y3\n");
  for (auto enc : {AngleEncoding::kPlain, AngleEncoding::kLinear, AngleEncoding::kGaussian,
                   AngleEncoding::kGaussianSquared}) {
    for (bool share : {true, false}) {
      UccOptions opt;
      opt.repetitions = 2;
      opt.share_across_repetitions = share;
      opt.encoding = enc;
      const Circuit c = build_ucc_circuit(gs, opt);
      const auto p = gen.params(c.registry().size(), 0.8);
      const PauliSum h = gen.pauli_sum(4, 12);
      const MetaValues meta{{"d", gen.real(0.5, 2.5)}};
      const auto ps = param_shift_gradient(c, h, meta, p);
      const auto fd = finite_diff_gradient(c, h, meta, p, 1e-4);
      for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_NEAR(ps.gradient[i], fd.gradient[i], 1e-6);
      }
    }
  }
}

TEST(GradientProperty, WeightComponentsScaleWithTheSymbol) {
  // With every w = 0 the bound state is symbol independent, so each dE/dw is
  // the site's angle derivative times the symbol value.
  Gen gen(45);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + gen.index(3);
    const Circuit c = meta_vqe_circuit(n, 2, 1);
    auto p = gen.params(c.registry().size());
    const auto entries = c.registry().entries();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (entries[i].name.ends_with(".w")) p[i] = 0.0;
    }
    const PauliSum h = build_xxz(n, 0.4, 0.75);
    const double d = gen.real(0.2, 1.0);
    const auto g1 = param_shift_gradient(c, h, {{"delta", d}}, p);
    const auto g2 = param_shift_gradient(c, h, {{"delta", 2 * d}}, p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (entries[i].name.ends_with(".w")) {
        EXPECT_NEAR(g2.gradient[i], 2 * g1.gradient[i], 1e-12);
      } else {
        EXPECT_NEAR(g2.gradient[i], g1.gradient[i], 1e-12);
      }
    }
  }
}

TEST(CircuitEnergy, MatchesExpectation) {
  Gen gen(46);
  const Circuit c = meta_vqe_circuit(3, 1, 1);
  const auto p = gen.params(c.registry().size());
  const PauliSum h = build_xxz(3, -0.2, 0.75);
  const double meta[] = {-0.2};
  EXPECT_EQ(circuit_energy(c, h, meta, p), expectation(bind_and_run(c, {{"delta", -0.2}}, p), h));
}

}  // namespace
}  // namespace metavqe
