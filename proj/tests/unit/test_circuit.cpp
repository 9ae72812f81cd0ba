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

#include "metavqe/circuit.hpp"
#include "metavqe/error.hpp"
#include "test_support.hpp"

namespace metavqe {
namespace {

using testing::cplx;
using testing::Gen;
constexpr double kPi = std::numbers::pi;

std::size_t count_type(const Circuit& c, GateType t) {
  std::size_t k = 0;
  for (const auto& g : c.gates()) k += g.type == t;
  return k;
}

TEST(ParamRegistry, NamesAreUniqueAndOrdered) {
  ParamRegistry reg;
  EXPECT_EQ(reg.add("a", Partition::kEncoding).index, 0u);
  EXPECT_EQ(reg.add("b", Partition::kProcessing, 2.5).index, 1u);
  EXPECT_THROW(reg.add("a", Partition::kProcessing), Error);
  EXPECT_EQ(reg.size(), 2u);
  EXPECT_EQ(reg.count(Partition::kEncoding), 1u);
  EXPECT_EQ(reg.find("b")->index, 1u);
  EXPECT_FALSE(reg.find("c").has_value());
  EXPECT_EQ(reg.initial_values(), (std::vector<double>{0.0, 2.5}));
}

TEST(EvalParamExpr, LinearExample) {
  const expr::Linear e{{0}, {0}, {1}};
  const double meta[] = {0.5};
  const double params[] = {2.0, 0.1};
  const ExprValue v = eval_param_expr(e, meta, params);
  EXPECT_DOUBLE_EQ(v.value, 1.1);
  ASSERT_EQ(v.partials().size(), 2u);
  EXPECT_EQ(v.partials()[0].param.index, 0u);
  EXPECT_EQ(v.partials()[0].value, 0.5);
  EXPECT_EQ(v.partials()[1].param.index, 1u);
  EXPECT_EQ(v.partials()[1].value, 1.0);
}

TEST(EvalParamExpr, GaussianAtInitialValues) {
  const expr::Gaussian e{{0}, {1}, {2}, {3}, {0}};
  const double meta[] = {1.0};
  const double params[] = {0.0, 1.0, 1.0, 0.0};
  const ExprValue v = eval_param_expr(e, meta, params);
  EXPECT_EQ(v.value, 0.0);
  ASSERT_EQ(v.partials().size(), 4u);
  EXPECT_EQ(v.partials()[0].value, 1.0);
  EXPECT_EQ(v.partials()[1].value, 0.0);
  EXPECT_EQ(v.partials()[2].value, 0.0);
  EXPECT_EQ(v.partials()[3].value, 1.0);
}

TEST(EvalParamExpr, ConstAndVar) {
  const double params[] = {0.7};
  EXPECT_EQ(eval_param_expr(expr::Const{1.5}, {}, params).value, 1.5);
  EXPECT_EQ(eval_param_expr(expr::Const{1.5}, {}, params).partials().size(), 0u);
  const ExprValue v = eval_param_expr(expr::Var{{0}}, {}, params);
  EXPECT_EQ(v.value, 0.7);
  EXPECT_EQ(v.partials()[0].value, 1.0);
}

TEST(EvalParamExprProperty, PartialsMatchCentralDifferences) {
  Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int kind = static_cast<int>(gen.index(3));
    ParamExpr e;
    std::size_t np = 0;
    if (kind == 0) {
      e = expr::Linear{{0}, {0}, {1}};
      np = 2;
    } else {
      e = expr::Gaussian{{0}, {1}, {2}, {3}, {0}, kind == 2};
      np = 4;
    }
    const double meta[] = {gen.real(-1.5, 1.5)};
    std::vector<double> p = gen.params(np, 1.0);
    const ExprValue v = eval_param_expr(e, meta, p);
    for (const auto& part : v.partials()) {
      const double h = 1e-6;
      auto up = p, down = p;
      up[part.param.index] += h;
      down[part.param.index] -= h;
      const double fd = (eval_param_expr(e, meta, up).value -
                         eval_param_expr(e, meta, down).value) / (2 * h);
      EXPECT_NEAR(part.value, fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(EvalParamExpr, SquaredGaussianUsesSquaredExponent) {
  const expr::Gaussian e{{0}, {1}, {2}, {3}, {0}, true};
  const double meta[] = {0.2};
  const double params[] = {1.5, -0.7, 0.9, 0.3};
  const double u = 0.9 - 0.2;
  EXPECT_NEAR(eval_param_expr(e, meta, params).value,
              1.5 * std::exp(-0.7 * u * u) + 0.3, 1e-15);
}

TEST(EncodingLayers, TwoQubitsOneLayerGateSequence) {
  Circuit c(2);
  add_encoding_layers(c, 1, c.add_meta_symbol("delta"));
  ASSERT_EQ(c.gates().size(), 6u);
  const GateType want[] = {GateType::kRY, GateType::kRZ, GateType::kRY,
                           GateType::kRZ, GateType::kCnot, GateType::kCnot};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(c.gates()[i].type, want[i]);
  EXPECT_EQ(c.gates()[0].target, 0u);
  EXPECT_EQ(c.gates()[2].target, 1u);
  EXPECT_EQ(c.gates()[4].control, 0u);
  EXPECT_EQ(c.gates()[4].target, 1u);
  EXPECT_EQ(c.gates()[5].control, 1u);
  EXPECT_EQ(c.gates()[5].target, 0u);
  EXPECT_EQ(c.registry().size(), 8u);
  EXPECT_EQ(c.registry().count(Partition::kEncoding), 8u);
}

TEST(EncodingLayers, CnotRingOrder) {
  Circuit c = meta_vqe_circuit(5, 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> ring;
  for (const auto& g : c.gates()) {
    if (g.type == GateType::kCnot) ring.emplace_back(g.control, g.target);
  }
  const std::vector<std::pair<std::size_t, std::size_t>> want = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  EXPECT_EQ(ring, want);
}

TEST(EncodingLayers, SizesAndErrors) {
  EXPECT_EQ(meta_vqe_circuit(8, 2, 0).registry().count(Partition::kEncoding), 64u);
  EXPECT_EQ(meta_vqe_circuit(2, 1, 0, "delta", Encoding::kGaussian).registry().size(), 16u);
  EXPECT_THROW(meta_vqe_circuit(1, 1, 1), InvalidSizeError);
  EXPECT_EQ(meta_vqe_circuit(3, 0, 0).gates().size(), 0u);
}

TEST(ProcessingLayers, Sizes) {
  Circuit c = meta_vqe_circuit(8, 2, 2);
  EXPECT_EQ(c.registry().count(Partition::kProcessing), 32u);
  EXPECT_EQ(c.registry().size(), 96u);
  EXPECT_EQ(processing_circuit(10, 4).registry().size(), 80u);
  EXPECT_EQ(processing_circuit(2, 1).registry().size(), 4u);
  EXPECT_EQ(meta_vqe_circuit(14, 2, 2).registry().size(), 168u);
}

TEST(CircuitProperty, TableCountIdentities) {
  for (std::size_t n = 2; n <= 14; ++n) {
    for (std::size_t l1 = 0; l1 <= 4; ++l1) {
      for (std::size_t l2 = 0; l2 <= 4; ++l2) {
        const Circuit meta = meta_vqe_circuit(n, l1, l2);
        EXPECT_EQ(meta.registry().size(), n * (4 * l1 + 2 * l2));
        EXPECT_EQ(meta.registry().count(Partition::kEncoding), 4 * n * l1);
        EXPECT_EQ(processing_circuit(n, l1 + l2).registry().size(), n * 2 * (l1 + l2));
        EXPECT_EQ(count_type(meta, GateType::kCnot), n * (l1 + l2));
      }
    }
  }
}

TEST(BindAndRun, ZeroParametersGiveAllZeros) {
  const Circuit c = meta_vqe_circuit(4, 2, 2);
  const std::vector<double> p(c.registry().size(), 0.0);
  for (double d : {-1.0, 0.3, 7.0}) {
    const Statevector s = bind_and_run(c, {{"delta", d}}, p);
    EXPECT_NEAR(std::abs(s[0] - cplx(1, 0)), 0.0, 1e-15);
  }
}

TEST(BindAndRun, GaussianInitialValuesGiveZeroAngles) {
  Circuit c(1);
  const MetaSymbol d = c.add_meta_symbol("d");
  auto& reg = c.registry();
  const auto a = reg.add("a", Partition::kEncoding, 0.0);
  const auto b = reg.add("b", Partition::kEncoding, 1.0);
  const auto g = reg.add("g", Partition::kEncoding, 1.0);
  const auto dl = reg.add("dl", Partition::kEncoding, 0.0);
  c.add_ry(0, expr::Gaussian{a, b, g, dl, d});
  for (double x : {-2.0, 0.0, 1.0, 3.5}) {
    const auto gates = metavqe::bind(c, std::vector<double>{x}, reg.initial_values());
    EXPECT_EQ(std::get<RotationY>(gates[0]).angle, 0.0);
  }
}

TEST(BindAndRun, LinearEncodingRotatesToOne) {
  Circuit c(1);
  const MetaSymbol d = c.add_meta_symbol("delta");
  const auto w = c.registry().add("w", Partition::kEncoding);
  const auto phi = c.registry().add("phi", Partition::kEncoding);
  c.add_ry(0, expr::Linear{w, d, phi});
  const double p[] = {1.0, 0.0};
  const Statevector s = bind_and_run(c, {{"delta", kPi}}, p);
  EXPECT_NEAR(std::abs(s[0]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
}

TEST(BindAndRun, Errors) {
  const Circuit c = meta_vqe_circuit(2, 1, 1);
  const std::vector<double> p(c.registry().size(), 0.1);
  EXPECT_THROW(bind_and_run(c, {}, p), BindingError);
  EXPECT_THROW(bind_and_run(c, {{"other", 1.0}}, p), BindingError);
  EXPECT_THROW(bind_and_run(c, {{"delta", 1.0}}, std::vector<double>(3)), DimensionError);
  // Extra names are ignored.
  EXPECT_NO_THROW(bind_and_run(c, {{"delta", 1.0}, {"field", 0.75}}, p));
}

TEST(CircuitProperty, ZeroWeightsMakeOutputIndependentOfSymbol) {
  Gen gen(32);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen.index(4);
    const Circuit c = meta_vqe_circuit(n, 1 + gen.index(2), gen.index(3));
    std::vector<double> p = gen.params(c.registry().size());
    const auto entries = c.registry().entries();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (entries[i].name.ends_with(".w")) p[i] = 0.0;
    }
    const Statevector a = bind_and_run(c, {{"delta", gen.real(-2, 2)}}, p);
    const Statevector b = bind_and_run(c, {{"delta", gen.real(-2, 2)}}, p);
    EXPECT_LT(testing::max_abs_diff(a.amplitudes(), b.amplitudes()), 1e-12);
  }
}

TEST(CircuitProperty, BindAndRunIsPure) {
  Gen gen(33);
  const Circuit c = meta_vqe_circuit(4, 2, 2, "delta", Encoding::kGaussian);
  const auto p = gen.params(c.registry().size(), 1.0);
  const Statevector a = bind_and_run(c, {{"delta", 0.3}}, p);
  const Statevector b = bind_and_run(c, {{"delta", 0.3}}, p);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(CircuitProperty, SharedHandleHasNonzeroPartialAtEverySite) {
  Gen gen(34);
  const GeneratorSet gs = parse_generator_file(
      "qubits 3\nreference 110\nt0 Y0 X1\nt1 X0 Y1 X2\nt0 Y1 X2\n");
  for (auto enc : {AngleEncoding::kPlain, AngleEncoding::kLinear, AngleEncoding::kGaussian}) {
    UccOptions opt;
    opt.repetitions = 2;
    opt.share_across_repetitions = true;
    opt.encoding = enc;
    const Circuit c = build_ucc_circuit(gs, opt);
    const auto p = gen.params(c.registry().size(), 1.0);
    const double meta[] = {0.4};
    std::vector<std::size_t> sites_per_param(c.registry().size());
    for (const auto& g : c.gates()) {
      const ExprValue v = eval_param_expr(g.angle, meta, p);
      for (const auto& part : v.partials()) {
        EXPECT_NE(part.value, 0.0);
        ++sites_per_param[part.param.index];
      }
    }
    // t0 is used by two generators in each of two repetitions.
    EXPECT_EQ(sites_per_param[0], 4u);
  }
}

TEST(Ucc, IdentityAtZeroAndFlipAtPi) {
  const GeneratorSet gs = parse_generator_file("qubits 2\nreference 00\ntheta X0 X1\n");
  const Circuit c = build_ucc_circuit(gs);
  EXPECT_EQ(c.registry().size(), 1u);
  const Statevector zero = bind_and_run(c, {}, std::vector<double>{0.0});
  EXPECT_EQ(zero[0], cplx(1, 0));
  const Statevector flip = bind_and_run(c, {}, std::vector<double>{kPi});
  EXPECT_NEAR(std::abs(flip[3]), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(flip[3] - cplx(0, -1)), 0.0, 1e-15);
}

TEST(Ucc, RepetitionsAndSharing) {
  const GeneratorSet gs = parse_generator_file(
      "# two generators\nqubits 4\nreference 0011\na Y0 X2\nb X0 X1 Y2 X3\n");
  EXPECT_EQ(gs.reference, "0011");
  UccOptions opt;
  opt.repetitions = 2;
  opt.share_across_repetitions = true;
  const Circuit shared = build_ucc_circuit(gs, opt);
  EXPECT_EQ(count_type(shared, GateType::kPauliExp), 4u);
  EXPECT_EQ(shared.registry().size(), 2u);
  opt.share_across_repetitions = false;
  const Circuit fresh = build_ucc_circuit(gs, opt);
  EXPECT_EQ(fresh.registry().size(), 4u);
  EXPECT_TRUE(fresh.registry().find("b.r1").has_value());
  // The reference is the initial state.
  EXPECT_EQ(bind_and_run(shared, {}, std::vector<double>(2))[12], cplx(1, 0));
}

TEST(Ucc, GeneratorFileErrors) {
  EXPECT_THROW(parse_generator_file("reference 00\na X0\n"), ParseError);
  EXPECT_THROW(parse_generator_file("qubits 2\na X0 X2\n"), RangeError);
  EXPECT_THROW(parse_generator_file("qubits 2\nreference 000\na X0\n"), ParseError);
  EXPECT_THROW(parse_generator_file("qubits 2\na\n"), ParseError);
  EXPECT_THROW(parse_generator_file("qubits 2\na Q0\n"), ParseError);
  GeneratorSet gs = parse_generator_file("qubits 2\na X0\n");
  UccOptions opt;
  opt.repetitions = 0;
  EXPECT_THROW(build_ucc_circuit(gs, opt), InvalidSizeError);
}

TEST(Circuit, ConstructionErrors) {
  Circuit c(2);
  EXPECT_THROW(c.add_ry(2, expr::Const{0.0}), DimensionError);
  EXPECT_THROW(c.add_cnot(1, 1), DimensionError);
  EXPECT_THROW(c.add_ry(0, expr::Var{{0}}), Error);
  EXPECT_THROW(c.set_reference("1"), DimensionError);
  EXPECT_THROW(c.add_pauli_exp({1.0, parse_pauli_word("X2")}, expr::Const{0.0}), RangeError);
  EXPECT_EQ(c.add_meta_symbol("x").index, c.add_meta_symbol("x").index);
}

TEST(Encoding, Names) {
  for (auto e : {Encoding::kLinear, Encoding::kGaussian, Encoding::kGaussianSquared}) {
    EXPECT_EQ(parse_encoding(to_string(e)), e);
  }
  EXPECT_THROW(parse_encoding("cubic"), ConfigError);
}

}  // namespace
}  // namespace metavqe
