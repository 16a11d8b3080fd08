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

// Monotone operators on R^N in a small closed set of structural classes:
// gradients and subdifferentials of separable functions, affine maps, the
// rotation-type planar operator that is monotone without being a
// subdifferential, the primal-dual skew coupling, and block products.
//
// Set-valued operators are represented by a single-valued selection.

#ifndef HARAUX_OPERATORS_H_
#define HARAUX_OPERATORS_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haraux/core.h"
#include "haraux/functions.h"

namespace haraux {

// A modulus of uniform monotonicity: <x - y, Ax - Ay> >= phi(||x - y||).
class UniformModulus {
 public:
  enum class Kind { kStrong, kPower, kCustom };

  // alpha * t^2.
  static UniformModulus Strong(double alpha);
  // alpha * t^p with p > 1.
  static UniformModulus Power(double alpha, double p);
  // Any increasing map on [0, inf) vanishing at 0; checked on a grid.
  static UniformModulus Custom(std::function<double(double)> fn);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double p() const { return p_; }
  double operator()(double t) const;

 private:
  UniformModulus(Kind kind, double alpha, double p,
                 std::function<double(double)> fn);

  Kind kind_;
  double alpha_;
  double p_;
  std::function<double(double)> fn_;
};

class MonotoneOperator;

struct GradientOp {
  SeparableFunction f;
};

// Selection: the derivative on the open interior of dom f.
struct SubdifferentialOp {
  SeparableFunction f;
};

// x -> M x + offset.
struct AffineOp {
  Matrix m;
  Vec offset;
};

// (xi1, xi2) -> (beta xi1 - psi'(xi1) - xi2, xi1 + beta xi2 - psi'(xi2)).
struct Joca16Op {
  double beta;
  ScalarLegendre psi;
};

// On R^N x R^M: (x, y*) -> (L^T y*, -L x) with L of shape M x N.
struct SkewOp {
  Matrix l;
};

// Block-diagonal product of operators on consecutive coordinate blocks.
struct ProductOp {
  std::vector<std::shared_ptr<const MonotoneOperator>> blocks;
};

class MonotoneOperator {
 public:
  using Variant = std::variant<GradientOp, SubdifferentialOp, AffineOp,
                               Joca16Op, SkewOp, ProductOp>;

  static MonotoneOperator Gradient(SeparableFunction f);
  static MonotoneOperator Subdifferential(SeparableFunction f);
  // Throws UsageError unless M is square and its symmetric part is positive
  // semidefinite (probed with random directions).
  static MonotoneOperator Affine(Matrix m, Vec offset);
  static MonotoneOperator Identity(std::size_t dim);
  // Throws UsageError unless beta > 0, psi is finite on R and psi' is
  // beta-Lipschitz on a sample grid.
  static MonotoneOperator Joca16(double beta, ScalarLegendre psi);
  static MonotoneOperator Skew(Matrix l);
  static MonotoneOperator Product(const std::vector<MonotoneOperator>& blocks);

  // Returns a copy carrying a declared modulus of uniform monotonicity.
  MonotoneOperator WithModulus(UniformModulus modulus) const;

  const Variant& variant() const { return v_; }
  const std::optional<UniformModulus>& modulus() const { return modulus_; }
  std::size_t dim() const;
  std::string name() const;

  // Open box containing the domain of the selection.
  Box Domain() const;
  bool InDomain(const Vec& x) const;
  // Throws DomainError outside the domain.
  Vec Apply(const Vec& x) const;
  Matrix Jacobian(const Vec& x) const;

  // Dimensions of the blocks for ProductOp, {dim()} otherwise.
  std::vector<std::size_t> BlockDims() const;

 private:
  explicit MonotoneOperator(Variant v) : v_(std::move(v)) {}

  Variant v_;
  std::optional<UniformModulus> modulus_;
};

// (grad f)^{-1} = grad f*, for Gradient and Subdifferential operators of
// Legendre functions. Throws UsageError otherwise.
MonotoneOperator InverseOfGradient(const MonotoneOperator& op);

struct MonotonicityReport {
  int pairs = 0;
  // min <x - y, Ax - Ay>.
  double min_pairing = 0.0;
  // min <x - y, Ax - Ay> / ||x - y||^2.
  double min_ratio_sq = 0.0;
  // min <x - y, Ax - Ay> - phi(||x - y||); only with a modulus.
  std::optional<double> min_modulus_excess;
};

// Samples `n` random pairs uniformly from `box`, which must be bounded and
// inside the domain.
MonotonicityReport ProbeMonotonicity(
    const MonotoneOperator& op, const Box& box, int n, std::uint64_t seed,
    const std::optional<UniformModulus>& modulus = std::nullopt);

}  // namespace haraux

#endif  // HARAUX_OPERATORS_H_
