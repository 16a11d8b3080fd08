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

#include "haraux/functions.h"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximizes a concave function on [lo, hi] by ternary search.
double MaximizeConcave(const std::function<double(double)>& g, double lo,
                       double hi) {
  for (int k = 0; k < 300; ++k) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return g(0.5 * (lo + hi));
}

struct Sampling {
  std::string name;
  Interval x;       // interior sampling box
  Interval u;       // interior sampling box of the conjugate domain
  Interval search;  // where the conjugate supremum is attained for u
};

const std::vector<Sampling>& Catalog() {
  static const std::vector<Sampling> c = {
      {"quadratic", {-5, 5}, {-5, 5}, {-20, 20}},
      {"burg", {0.05, 5}, {-5, -0.2}, {1e-9, 20}},
      {"boltzmann_shannon", {0.01, 5}, {-3, 2}, {1e-12, 20}},
      {"fermi_dirac", {0.01, 0.99}, {-4, 4}, {1e-12, 1 - 1e-12}},
      {"softplus", {-5, 5}, {0.02, 0.98}, {-20, 20}},
      {"quad_plus:quadratic", {-5, 5}, {-5, 5}, {-20, 20}},
      {"quad_plus:burg", {0.05, 5}, {-5, 5}, {1e-9, 20}},
      {"quad_plus:boltzmann_shannon", {0.01, 5}, {-5, 5}, {1e-12, 20}},
  };
  return c;
}

TEST(EvalTest, Examples) {
  const SeparableFunction burg(Burg(), 1);
  EXPECT_EQ(burg.Value(Vec{1}).value(), 0.0);
  EXPECT_FALSE(burg.Value(Vec{-1}).is_finite());
  EXPECT_FALSE(burg.Value(Vec{0}).is_finite());
  const SeparableFunction fd(FermiDirac(), 1);
  EXPECT_NEAR(fd.Value(Vec{0.5}).value(), std::log(0.5), 1e-15);
  EXPECT_EQ(fd.Value(Vec{0}).value(), 0.0);
  EXPECT_EQ(fd.Value(Vec{1}).value(), 0.0);
  EXPECT_FALSE(fd.Value(Vec{1.5}).is_finite());
  const SeparableFunction bs(BoltzmannShannon(), 1);
  EXPECT_EQ(bs.Value(Vec{0}).value(), 0.0);
  EXPECT_NEAR(bs.Value(Vec{1}).value(), -1.0, 1e-15);
}

TEST(ConjugateEvalTest, Examples) {
  EXPECT_NEAR(SeparableFunction(Burg(), 1).ConjValue(Vec{-1}).value(), -1.0,
              1e-15);
  EXPECT_FALSE(SeparableFunction(Burg(), 1).ConjValue(Vec{1}).is_finite());
  EXPECT_NEAR(SeparableFunction(BoltzmannShannon(), 1).ConjValue(Vec{0}).value(),
              1.0, 1e-15);
  EXPECT_NEAR(SeparableFunction(Quadratic(), 1).ConjValue(Vec{3}).value(), 4.5,
              1e-15);
}

TEST(ConjugateEvalTest, MatchesBruteForceSupremum) {
  std::mt19937_64 rng(3);
  for (const auto& e : Catalog()) {
    const ScalarLegendre f = ScalarByName(e.name);
    std::uniform_real_distribution<double> du(e.u.lo, e.u.hi);
    for (int k = 0; k < 50; ++k) {
      const double s = du(rng);
      const double oracle = MaximizeConcave(
          [&](double t) { return t * s - f.Value(t).value(); }, e.search.lo,
          e.search.hi);
      EXPECT_NEAR(f.ConjValue(s).value(), oracle,
                  1e-9 * (1 + std::abs(oracle)))
          << e.name << " at " << s;
    }
  }
}

TEST(GradientTest, Examples) {
  EXPECT_EQ(SeparableFunction(Burg(), 1).Gradient(Vec{2}), (Vec{-0.5}));
  EXPECT_EQ(SeparableFunction(FermiDirac(), 1).Gradient(Vec{0.5})[0], 0.0);
  EXPECT_EQ(SeparableFunction(Quadratic(), 2).Gradient(Vec{1.5, -2}),
            (Vec{1.5, -2}));
  EXPECT_THROW(SeparableFunction(Burg(), 1).Gradient(Vec{0}), DomainError);
  EXPECT_THROW(SeparableFunction(FermiDirac(), 1).Gradient(Vec{1}),
               DomainError);
}

TEST(GradientTest, CentralFiniteDifferences) {
  std::mt19937_64 rng(5);
  const double h = 1e-6;
  for (const auto& e : Catalog()) {
    const ScalarLegendre f = ScalarByName(e.name);
    std::uniform_real_distribution<double> dx(e.x.lo, e.x.hi);
    for (int k = 0; k < 1000; ++k) {
      const double t = dx(rng);
      const double fd =
          (f.Value(t + h).value() - f.Value(t - h).value()) / (2 * h);
      ASSERT_LE(std::abs(fd - f.Deriv(t)), 1e-5) << e.name << " at " << t;
    }
  }
}

TEST(GradientTest, SecondDerivativeByFiniteDifferences) {
  std::mt19937_64 rng(6);
  const double h = 1e-6;
  for (const auto& e : Catalog()) {
    const ScalarLegendre f = ScalarByName(e.name);
    std::uniform_real_distribution<double> dx(e.x.lo, e.x.hi);
    for (int k = 0; k < 200; ++k) {
      const double t = dx(rng);
      const double fd = (f.Deriv(t + h) - f.Deriv(t - h)) / (2 * h);
      ASSERT_LE(std::abs(fd - f.Deriv2(t)), 1e-4 * (1 + f.Deriv2(t)))
          << e.name << " at " << t;
    }
  }
}

TEST(GradientTest, DerivInvRoundTrip) {
  for (const auto& e : Catalog()) {
    const ScalarLegendre f = ScalarByName(e.name);
    for (int k = 0; k <= 1000; ++k) {
      const double t = e.x.lo + (e.x.hi - e.x.lo) * k / 1000.0;
      ASSERT_NEAR(f.DerivInv(f.Deriv(t)), t, 1e-10 * (1 + std::abs(t)))
          << e.name;
    }
  }
}

TEST(BregmanTest, Examples) {
  const SeparableFunction q(Quadratic(), 2);
  EXPECT_NEAR(Bregman(q, Vec{1, 2}, Vec{-1, 0.5}).value(),
              0.5 * (4 + 2.25), 1e-14);
  const SeparableFunction burg(Burg(), 1);
  EXPECT_NEAR(Bregman(burg, Vec{1}, Vec{2}).value(), std::log(2.0) - 0.5,
              1e-15);
  EXPECT_EQ(Bregman(burg, Vec{3}, Vec{3}).value(), 0.0);
  EXPECT_FALSE(Bregman(burg, Vec{1}, Vec{0}).is_finite());
  EXPECT_FALSE(Bregman(burg, Vec{-1}, Vec{1}).is_finite());
}

TEST(BregmanTest, NonnegativeAndZeroOnDiagonal) {
  std::mt19937_64 rng(9);
  for (const auto& e : Catalog()) {
    const SeparableFunction f(ScalarByName(e.name), 2);
    std::uniform_real_distribution<double> dx(e.x.lo, e.x.hi);
    for (int k = 0; k < 500; ++k) {
      const Vec x{dx(rng), dx(rng)}, y{dx(rng), dx(rng)};
      ASSERT_GE(Bregman(f, x, y).value(), -1e-12) << e.name;
      ASSERT_EQ(Bregman(f, x, x).value(), 0.0) << e.name;
    }
  }
}

TEST(FenchelYoungTest, Examples) {
  const ConvexFunction burg = SeparableFunction(Burg(), 1);
  EXPECT_NEAR(FenchelYoung(burg, DualPair(Vec{1}, Vec{-1})).value(), 0.0,
              1e-15);
  EXPECT_NEAR(FenchelYoung(burg, DualPair(Vec{1}, Vec{-2})).value(),
              1 - std::log(2.0), 1e-15);
  const ConvexFunction comp =
      CompositeQuadPlus(SeparableFunction(Quadratic(), 1));
  EXPECT_NEAR(FenchelYoung(comp, DualPair(Vec{1}, Vec{0})).value(), 1.0,
              1e-15);
  EXPECT_FALSE(FenchelYoung(burg, DualPair(Vec{1}, Vec{1})).is_finite());
}

TEST(FenchelYoungTest, BurgClosedForm) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dx(0.01, 5), du(-5, -0.01);
  const ConvexFunction burg = SeparableFunction(Burg(), 1);
  for (int k = 0; k < 1000; ++k) {
    const double xi = dx(rng), mu = du(rng);
    EXPECT_NEAR(FenchelYoung(burg, DualPair(Vec{xi}, Vec{mu})).value(),
                -1 - std::log(-xi * mu) - xi * mu, 1e-12);
  }
}

TEST(FenchelYoungTest, CompositeQuadraticClosedForm) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> d(-5, 5);
  const ConvexFunction comp = FunctionByName("quad_plus:quadratic", 1);
  for (int k = 0; k < 1000; ++k) {
    const double x = d(rng), u = d(rng);
    EXPECT_NEAR(FenchelYoung(comp, DualPair(Vec{x}, Vec{u})).value(),
                (2 * x - u) * (2 * x - u) / 4, 1e-11);
  }
}

TEST(FenchelYoungTest, NonnegativeAndZeroOnGraph) {
  std::mt19937_64 rng(14);
  for (const auto& e : Catalog()) {
    const ConvexFunction phi = FunctionByName(e.name, 2);
    std::uniform_real_distribution<double> dx(e.x.lo, e.x.hi), du(e.u.lo, e.u.hi);
    for (int k = 0; k < 500; ++k) {
      const Vec x{dx(rng), dx(rng)};
      const Vec u{du(rng), du(rng)};
      ASSERT_GE(FenchelYoung(phi, DualPair(x, u)).value(), -1e-12) << e.name;
      ASSERT_LE(FenchelYoung(phi, DualPair(x, Gradient(phi, x))).value(), 1e-10)
          << e.name;
    }
  }
}

TEST(MoreauEnvelopeTest, Examples) {
  EXPECT_NEAR(MoreauEnvelope(SeparableFunction(Quadratic(), 1), Vec{2}), 1.0,
              1e-14);
  EXPECT_EQ(MoreauEnvelope(SeparableFunction(ZeroFunction(), 3), Vec{1, -2, 7}),
            0.0);
  EXPECT_NEAR(MoreauEnvelope(SeparableFunction(BoltzmannShannon(), 1), Vec{1}),
              -1.0, 1e-14);
}

TEST(MoreauEnvelopeTest, MatchesBruteForceInfimum) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> d(-4, 4);
  for (const char* name : {"burg", "boltzmann_shannon", "fermi_dirac",
                           "softplus", "quadratic"}) {
    const ScalarLegendre f = ScalarByName(name);
    const double lo = std::isfinite(f.domain().lo) ? f.domain().lo + 1e-15 : -30;
    const double hi = std::isfinite(f.domain().hi) ? f.domain().hi - 1e-15 : 30;
    for (int k = 0; k < 50; ++k) {
      const double x = d(rng);
      const double oracle = -MaximizeConcave(
          [&](double y) {
            return -(f.Value(y).value() + 0.5 * (x - y) * (x - y));
          },
          lo, hi);
      EXPECT_NEAR(MoreauEnvelope(SeparableFunction(f, 1), Vec{x}), oracle,
                  1e-9)
          << name << " at " << x;
    }
  }
}

TEST(CatalogTest, NamesAndErrors) {
  EXPECT_EQ(ScalarByName("burg").name(), "burg");
  EXPECT_EQ(ScalarByName("quad_plus:burg").kind(),
            ScalarLegendre::Kind::kQuadPlus);
  EXPECT_EQ(ScalarByName("conj:burg").kind(),
            ScalarLegendre::Kind::kConjugate);
  EXPECT_THROW(ScalarByName("entropy"), UsageError);
  EXPECT_THROW(ScalarByName("quad_plus:nope"), UsageError);
  EXPECT_THROW(Conjugate(ZeroFunction()), UsageError);
  EXPECT_TRUE(std::holds_alternative<CompositeQuadPlus>(
      FunctionByName("quad_plus:quadratic", 2)));
  EXPECT_EQ(Dim(FunctionByName("burg", 3)), 3u);
  EXPECT_THROW(SeparableFunction(Burg(), 0), UsageError);
}

TEST(CatalogTest, ConjugatePairsAreInverse) {
  // softplus and fermi_dirac are conjugate to each other.
  const ScalarLegendre sp = Softplus(), fd = FermiDirac();
  for (double s : {0.1, 0.3, 0.5, 0.9}) {
    EXPECT_NEAR(sp.ConjValue(s).value(), fd.Value(s).value(), 1e-14);
  }
  const ScalarLegendre cb = Conjugate(Burg());
  for (double s : {-3.0, -1.0, -0.2}) {
    EXPECT_NEAR(cb.Value(s).value(), Burg().ConjValue(s).value(), 1e-15);
    EXPECT_NEAR(cb.Deriv(s), Burg().DerivInv(s), 1e-15);
  }
}

TEST(CompositeTest, GradientAndConjugateGradient) {
  const CompositeQuadPlus phi(SeparableFunction(Burg(), 1));
  EXPECT_NEAR(phi.Gradient(Vec{2})[0], 2 - 0.5, 1e-15);
  // prox_burg(u) solves z - 1/z = u; at u = 0 the root is 1.
  EXPECT_NEAR(phi.ConjGradient(Vec{0})[0], 1.0, 1e-13);
  EXPECT_THROW(phi.Gradient(Vec{-1}), DomainError);
  EXPECT_NEAR(phi.AsSeparable().Value(Vec{2}).value(),
              phi.Value(Vec{2}).value(), 1e-15);
}

}  // namespace
}  // namespace haraux
