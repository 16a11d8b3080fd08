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

#include "haraux/oracle.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "haraux/bounds.h"

namespace haraux {
namespace {

TEST(SampleGraphTest, Examples) {
  const auto q = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1));
  const GraphSample s = SampleGraph(q, {{-1, 1}}, 3);
  ASSERT_EQ(s.points.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(s.points[i].y[0], i - 1.0);
    EXPECT_EQ(s.points[i].y_star[0], i - 1.0);
  }
  const auto burg = MonotoneOperator::Gradient(SeparableFunction(Burg(), 1));
  const GraphSample b = SampleGraph(burg, {{1, 2}}, 2);
  ASSERT_EQ(b.points.size(), 2u);
  EXPECT_EQ(b.points[0].y_star[0], -1.0);
  EXPECT_EQ(b.points[1].y[0], 2.0);
  EXPECT_EQ(b.points[1].y_star[0], -0.5);
}

TEST(SampleGraphTest, ProductGridAndErrors) {
  const auto id = MonotoneOperator::Identity(2);
  EXPECT_EQ(SampleGraph(id, {{0, 1}, {0, 1}}, 5).points.size(), 25u);
  EXPECT_THROW(SampleGraph(id, {{0, 1}}, 5), UsageError);
  EXPECT_THROW(SampleGraph(id, {{0, 1}, {0, 1}}, 1), UsageError);
  const auto burg = MonotoneOperator::Gradient(SeparableFunction(Burg(), 1));
  EXPECT_THROW(SampleGraph(burg, {{-1, 1}}, 5), DomainError);
  const GraphSample r = SampleGraphRandom(id, {{0, 1}, {2, 3}}, 100, 9);
  ASSERT_EQ(r.points.size(), 100u);
  for (const auto& g : r.points) {
    EXPECT_TRUE(g.y[1] >= 2 && g.y[1] <= 3);
    EXPECT_EQ(g.y, g.y_star);
  }
}

TEST(SampleGraphTest, NestedGridsShareAllPoints) {
  const auto id = MonotoneOperator::Identity(1);
  const GraphSample coarse = SampleGraph(id, {{-10, 10}}, 257);
  const GraphSample fine = SampleGraph(id, {{-10, 10}}, RefineGridSize(257));
  for (std::size_t i = 0; i < coarse.points.size(); ++i) {
    ASSERT_EQ(coarse.points[i].y, fine.points[2 * i].y);
  }
}

TEST(HarauxLowerApproxTest, Examples) {
  const auto q = MonotoneOperator::Gradient(SeparableFunction(Quadratic(), 1));
  const GraphSample s = SampleGraph(q, {{-3, 3}}, 6001);
  // sup_y (1 - y) y = 1/4 at y = 1/2, below L(1, 0) = 1/2.
  EXPECT_NEAR(HarauxLowerApprox(s, DualPair(Vec{1}, Vec{0})), 0.25, 1e-6);
  // A sampled graph point contributes 0, so graph points score >= 0.
  const GraphSample c = SampleGraph(q, {{-1, 1}}, 3);
  EXPECT_GE(HarauxLowerApprox(c, DualPair(Vec{0}, Vec{0})), 0.0);
  EXPECT_THROW(HarauxLowerApprox(GraphSample{}, DualPair(Vec{0}, Vec{0})),
               UsageError);
}

TEST(HarauxLowerApproxTest, RefinementIsMonotone) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dx(0.05, 5), du(-5, 5);
  const auto a = MonotoneOperator::Gradient(SeparableFunction(Burg(), 1));
  const Box box = DefaultVerificationBox(a);
  for (int k = 0; k < 20; ++k) {
    const DualPair p(Vec{dx(rng)}, Vec{du(rng)});
    double prev = -INFINITY;
    for (std::size_t n = 65; n <= 8193; n = RefineGridSize(n)) {
      const double v = HarauxLowerApprox(SampleGraph(a, box, n), p);
      ASSERT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(HarauxLowerApproxTest, ConvergesForIdentity) {
  // sup_y (x - y)(y - u*) = (x - u*)^2 / 4, attained at y = (x + u*)/2.
  const auto id = MonotoneOperator::Identity(1);
  const GraphSample s = SampleGraph(id, {{-10, 10}}, 4096);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int k = 0; k < 200; ++k) {
    const double x = d(rng), u = d(rng);
    const double approx = HarauxLowerApprox(s, DualPair(Vec{x}, Vec{u}));
    ASSERT_LE(approx, (x - u) * (x - u) / 4 + 1e-12);
    ASSERT_GE(approx, (x - u) * (x - u) / 4 - 1e-3);
  }
}

TEST(HarauxLowerApproxTest, BelowFenchelYoung) {
  std::mt19937_64 rng(43);
  struct Case {
    const char* name;
    Interval x, u;
  };
  for (const Case& c : {Case{"burg", {0.05, 5}, {-5, -0.05}},
                        Case{"boltzmann_shannon", {0.01, 5}, {-3, 3}},
                        Case{"fermi_dirac", {0.01, 0.99}, {-3, 3}},
                        Case{"softplus", {-5, 5}, {0.01, 0.99}}}) {
    const SeparableFunction f(ScalarByName(c.name), 1);
    const auto a = MonotoneOperator::Subdifferential(f);
    const GraphSample s = SampleGraph(a, DefaultVerificationBox(a), 4096);
    std::uniform_real_distribution<double> dx(c.x.lo, c.x.hi), du(c.u.lo, c.u.hi);
    for (int k = 0; k < 200; ++k) {
      const DualPair p(Vec{dx(rng)}, Vec{du(rng)});
      ASSERT_LE(HarauxLowerApprox(s, p), FenchelYoung(f, p).value() + 1e-9)
          << c.name;
    }
  }
}

TEST(VerifyBoundTest, ExactComparisons) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> dx(1e-3, 5), du(-5, -1e-3), dg(-1, 1);
  const ConvexFunction burg = SeparableFunction(Burg(), 1);
  for (int k = 0; k < 10000; ++k) {
    const DualPair p(Vec{dx(rng)}, Vec{du(rng)});
    const double gamma = std::pow(10.0, dg(rng));
    const VerifyReport r =
        VerifyBound(BoundBurgClosed(p, gamma), FenchelYoung(burg, p), 1e-9);
    ASSERT_EQ(r.verdict, Verdict::kPass) << r.bound << " vs " << r.reference;
  }
  BoundResult zero;
  zero.value = 0;
  EXPECT_EQ(VerifyBound(zero, XReal(0), 1e-9).verdict, Verdict::kPass);
  BoundResult big;
  big.value = 2;
  EXPECT_EQ(VerifyBound(big, XReal(1), 1e-9).verdict, Verdict::kFail);
  big.usable = false;
  EXPECT_EQ(VerifyBound(big, XReal::Infinity(), 1e-9).verdict, Verdict::kFail);
}

TEST(VerifyBoundTest, CompositeRatioIsOneHalf) {
  const ConvexFunction comp = FunctionByName("quad_plus:quadratic", 1);
  const DualPair p(Vec{1.5}, Vec{-0.5});
  const BoundResult b = BoundLegendreSelf(comp, p, 1);
  const VerifyReport r = VerifyBound(b, FenchelYoung(comp, p), 1e-9);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_NEAR(r.bound / r.reference, 0.5, 1e-12);
}

TEST(VerifyBoundAgainstGraphTest, EscalatesAndReports) {
  const auto a = MonotoneOperator::Subdifferential(SeparableFunction(Burg(), 1));
  const DualPair p(Vec{1}, Vec{-2});
  const BoundResult b = BoundPairing(MonotoneOperator::Identity(1), a, p, 1);
  const VerifyReport ok = VerifyBoundAgainstGraph(b, a, p, 1e-6);
  EXPECT_EQ(ok.verdict, Verdict::kConsistent);
  EXPECT_EQ(ok.n_per_dim, 4096u);

  BoundResult inflated = b;
  inflated.value = 10;  // far above H_A(1, -2) = 1 - ln 2
  const VerifyReport bad = VerifyBoundAgainstGraph(
      inflated, a, p, 1e-6, {.n_per_dim = 257, .max_n_per_dim = 4097});
  EXPECT_EQ(bad.verdict, Verdict::kFail);
  EXPECT_EQ(bad.n_per_dim, 4097u);
  EXPECT_EQ(bad.refinements, 4);
  const VerifyReport unsure =
      VerifyBoundAgainstGraph(inflated, a, p, 1e-6, {.escalate = false});
  EXPECT_EQ(unsure.verdict, Verdict::kInconclusive);
  EXPECT_EQ(VerdictName(Verdict::kConsistent), "consistent");
}

TEST(DefaultsTest, GridSizesAndBoxes) {
  EXPECT_EQ(DefaultGridSize(1), 4096u);
  EXPECT_EQ(DefaultGridSize(2), 257u);
  EXPECT_EQ(MaxGridSize(1), 65537u);
  EXPECT_EQ(RefineGridSize(4096), 8191u);
  EXPECT_THROW(DefaultGridSize(4), UsageError);
  EXPECT_EQ(kDefaultSeed, 0x48415241u);
  const auto fd = MonotoneOperator::Gradient(SeparableFunction(FermiDirac(), 1));
  const Box box = DefaultVerificationBox(fd);
  EXPECT_NEAR(box[0].lo, 1e-6, 1e-18);
  EXPECT_NEAR(box[0].hi, 1 - 1e-6, 1e-15);
  const Box wide = DefaultVerificationBox(MonotoneOperator::Identity(2));
  EXPECT_EQ(wide[1].lo, -10.0);
  EXPECT_EQ(wide[1].hi, 10.0);
}

}  // namespace
}  // namespace haraux
