// Copyright 2026 The Haraux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "haraux/gauges.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "haraux/bounds.h"
#include "haraux/oracle.h"
#include "haraux/solvers.h"

namespace haraux {
namespace {

MonotoneOperator Const1(double b) {
  return MonotoneOperator::Affine(Matrix::FromRows({{0}}), Vec{b});
}

// C x = x - a and D^{-1} y = y - b, with offsets back-solved so that
// (x_bar, y_bar) is the Kuhn-Tucker point.
KtInstance PlantedInstance(const Vec& x_bar, const Vec& y_bar, const Matrix& l,
                           double gamma) {
  const std::size_t n = x_bar.dim(), m = y_bar.dim();
  return KtInstance{
      .c = MonotoneOperator::Affine(Matrix::Identity(n),
                                    -(x_bar + l.TransposeMultiply(y_bar))),
      .d_inv = MonotoneOperator::Affine(Matrix::Identity(m),
                                        -(y_bar - l.Multiply(x_bar))),
      .l = l,
      .gamma = gamma,
      .w_x = MonotoneOperator::Identity(n),
      .w_ystar = MonotoneOperator::Identity(m),
  };
}

TEST(ThetaBoundTest, Examples) {
  const InclusionInstance inst{
      .a = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1)),
      .b = Const1(1),
      .w = MonotoneOperator::Identity(1),
      .gamma = 1};
  EXPECT_NEAR(ThetaBound(inst, Vec{0}).value, 0.25, 1e-15);
  EXPECT_NEAR(ThetaBound(inst, Vec{0}).z[0], -0.5, 1e-15);
  EXPECT_LE(ThetaBound(inst, Vec{-1}).value, 1e-15);
}

TEST(ThetaBoundTest, HilbertCaseFormula) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> d(0.1, 4), dg(0.1, 3);
  const SeparableFunction burg(Burg(), 1);
  const auto b = MonotoneOperator::Affine(Matrix::FromRows({{0.5}}), Vec{-1});
  for (int k = 0; k < 300; ++k) {
    const double x = d(rng), gamma = dg(rng);
    const InclusionInstance inst{.a = MonotoneOperator::Subdifferential(burg),
                                 .b = b,
                                 .w = MonotoneOperator::Identity(1),
                                 .gamma = gamma};
    const double j = Prox(burg, gamma, Vec{x - gamma * (0.5 * x - 1)})[0];
    ASSERT_NEAR(ThetaBound(inst, Vec{x}).value, (x - j) * (x - j) / gamma,
                1e-12);
  }
}

TEST(ThetaBoundTest, ZeroAtZerosAndBelowSampledGap) {
  // grad burg + B with B x = x/2 - 1: -1/x + x/2 - 1 = 0 at x = 1 + sqrt(3).
  const SeparableFunction burg(Burg(), 1);
  const auto a = MonotoneOperator::Subdifferential(burg);
  const auto b = MonotoneOperator::Affine(Matrix::FromRows({{0.5}}), Vec{-1});
  const double root = 1 + std::sqrt(3.0);
  for (const auto& w : {MonotoneOperator::Identity(1),
                        MonotoneOperator::Gradient(burg)}) {
    const InclusionInstance inst{.a = a, .b = b, .w = w, .gamma = 0.7};
    EXPECT_LE(ThetaBound(inst, Vec{root}).value, 1e-12) << w.name();
    for (double x : {0.2, 0.9, 2.0, 5.0}) {
      const BoundResult t = ThetaBound(inst, Vec{x});
      EXPECT_GT(t.value, 1e-6);
      const DualPair p(Vec{x}, -b.Apply(Vec{x}));
      EXPECT_EQ(VerifyBoundAgainstGraph(t, a, p, 1e-6).verdict,
                Verdict::kConsistent)
          << w.name() << " x=" << x;
    }
  }
}

TEST(ThetaBoundTest, DiagnosticsWithModulusAndKernelFunction) {
  const SeparableFunction burg(Burg(), 1);
  const InclusionInstance inst{
      .a = MonotoneOperator::Subdifferential(burg),
      .b = Const1(0.5),
      .w = MonotoneOperator::Gradient(burg),
      .gamma = 1.3,
      .modulus = UniformModulus::Strong(0.01),
      .f = burg};
  const BoundResult t = ThetaBound(inst, Vec{0.8});
  ASSERT_TRUE(t.diagnostics.count("modulus_bound"));
  ASSERT_TRUE(t.diagnostics.count("bregman_bound"));
  EXPECT_NEAR(t.diagnostics.at("bregman_bound"), t.value, 1e-12);
  EXPECT_LE(t.diagnostics.at("modulus_bound"), t.value);
}

TEST(PrimalPrimalBoundTest, UsesTheSelectionAtTheSecondPoint) {
  const auto a = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1));
  const auto b = MonotoneOperator::Affine(Matrix::FromRows({{2}}), Vec{0});
  const InclusionInstance inst{.a = a, .b = b,
                               .w = MonotoneOperator::Identity(1), .gamma = 1};
  const BoundResult g = PrimalPrimalBound(inst, Vec{1}, Vec{0.5});
  const BoundResult direct = BoundPairing(inst.w, a, DualPair(Vec{1}, Vec{-1}), 1);
  EXPECT_NEAR(g.value, direct.value, 1e-15);
  EXPECT_NEAR(PrimalPrimalBound(inst, Vec{1}, Vec{1}).value,
              ThetaBound(inst, Vec{1}).value, 1e-15);
}

TEST(KtGaugeTest, LinearQuadraticHandSolvedInstance) {
  // C = D = grad(|.|^2/2), L = [1]: x + y* = 0 and y* - x = 0, so the
  // Kuhn-Tucker point is the origin.
  const KtInstance inst{
      .c = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1)),
      .d_inv = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1)),
      .l = Matrix::FromRows({{1}}),
      .gamma = 1,
      .w_x = MonotoneOperator::Identity(1),
      .w_ystar = MonotoneOperator::Identity(1)};
  EXPECT_LE(KtGaugeBound(inst, Vec{0}, Vec{0}).value, 1e-9);
  const BoundResult g = KtGaugeBound(inst, Vec{0.1}, Vec{0.1});
  // x - J(x - y*) = 0.1 - 0 and y* - J(y* + x) = 0.1 - 0.1.
  EXPECT_NEAR(g.value, 0.01, 1e-15);
  EXPECT_NEAR(g.diagnostics.at("component_primal"), 0.01, 1e-15);
  EXPECT_NEAR(g.diagnostics.at("component_dual"), 0.0, 1e-15);
}

TEST(KtGaugeTest, PlantedInstancesVanishAndSeparate) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> d(-2, 2), dg(-1, 1);
  for (int k = 0; k < 200; ++k) {
    Matrix l(2, 3);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 3; ++j) l(i, j) = d(rng);
    }
    const Vec xb{d(rng), d(rng), d(rng)}, yb{d(rng), d(rng)};
    const KtInstance inst = PlantedInstance(xb, yb, l, std::pow(10.0, dg(rng)));
    ASSERT_LE(KtGaugeBound(inst, xb, yb).value, 1e-9);
    const Vec xd = xb + Vec{0.1, 0.1, 0.1}, yd = yb + Vec{0.1, 0.1};
    const BoundResult g = KtGaugeBound(inst, xd, yd);
    ASSERT_GE(g.value, 1e-6);
    const BoundResult theta =
        ThetaBound(KtAsInclusion(inst), Vec::Concat(xd, yd));
    ASSERT_NEAR(g.value, theta.value, 1e-10);
  }
}

TEST(KtGaugeTest, HilbertFormula) {
  const KtInstance inst =
      PlantedInstance(Vec{0.5}, Vec{-0.3}, Matrix::FromRows({{2}}), 0.5);
  const Vec x{1.0}, y{0.4};
  const double gamma = 0.5;
  // J_{gamma C}(v) = (v + gamma a) / (1 + gamma) for C v = v - a.
  const double a = 0.5 + 2 * -0.3, b = -0.3 - 2 * 0.5;
  const double jx = (x[0] - gamma * 2 * y[0] + gamma * a) / (1 + gamma);
  const double jy = (y[0] + gamma * 2 * x[0] + gamma * b) / (1 + gamma);
  const double expected =
      ((x[0] - jx) * (x[0] - jx) + (y[0] - jy) * (y[0] - jy)) / gamma;
  EXPECT_NEAR(KtGaugeBound(inst, x, y).value, expected, 1e-14);
}

TEST(KtGaugeTest, ValidatesShapes) {
  KtInstance inst =
      PlantedInstance(Vec{0.5}, Vec{-0.3}, Matrix::FromRows({{2}}), 1);
  EXPECT_THROW(KtGaugeBound(inst, Vec{1, 2}, Vec{1}), UsageError);
  inst.l = Matrix::FromRows({{1, 2}});
  EXPECT_THROW(KtGaugeBound(inst, Vec{1}, Vec{1}), UsageError);
}

TEST(FrGaugeTest, QuadraticKernelsReproduceProxFormula) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> d(-3, 3), dp(0.1, 3);
  const SeparableFunction q(Quadratic(), 1);
  const SeparableFunction burg(Burg(), 1);
  const Matrix l = Matrix::FromRows({{0.7}});
  for (int k = 0; k < 200; ++k) {
    const Vec x{d(rng)}, y{d(rng)};
    const double gamma = dp(rng);
    const double px = Prox(burg, gamma, x - gamma * l.TransposeMultiply(y))[0];
    const double py = Prox(q, gamma, y + gamma * l.Multiply(x))[0];
    const double expected =
        ((x[0] - px) * (x[0] - px) + (y[0] - py) * (y[0] - py)) / gamma;
    ASSERT_NEAR(FrGaugeBound(q, q, burg, q, l, gamma, x, y).value, expected,
                1e-10);
  }
}

TEST(FrGaugeTest, OptimalPairGivesZero) {
  const SeparableFunction q(Quadratic(), 2);
  const Matrix id = Matrix::Identity(2);
  EXPECT_LE(FrGaugeBound(q, q, q, q, id, 1, Vec{0, 0}, Vec{0, 0}).value,
            1e-15);
  EXPECT_GT(FrGaugeBound(q, q, q, q, id, 1, Vec{0.1, 0}, Vec{0, 0}).value,
            1e-6);
}

TEST(FrGaugeTest, BurgBlocksEqualTwoBregmanBounds) {
  const SeparableFunction burg(Burg(), 1);
  const Matrix l = Matrix::FromRows({{0.1}});
  const auto a = MonotoneOperator::Subdifferential(burg);
  for (double gamma : {0.2, 1.0, 4.0}) {
    const Vec x{0.8}, y{1.7};
    const BoundResult g = FrGaugeBound(burg, burg, burg, burg, l, gamma, x, y);
    const double primal =
        BoundBregman(burg, a, DualPair(x, -l.TransposeMultiply(y)), gamma).value;
    const double dual =
        BoundBregman(burg, a, DualPair(y, l.Multiply(x)), gamma).value;
    EXPECT_NEAR(g.value, primal + dual, 1e-12);
    EXPECT_NEAR(g.diagnostics.at("component_primal"), primal, 1e-12);
    EXPECT_THROW(FrGaugeBound(burg, burg, burg, burg, l, gamma, Vec{-1}, y),
                 DomainError);
  }
}

}  // namespace
}  // namespace haraux
