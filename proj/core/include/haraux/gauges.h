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

// Residual gauges for 0 in Ax + Bx with single-valued B, for the
// Kuhn-Tucker form of primal-dual composite problems, and for
// Fenchel-Rockafellar duality. Each gauge is a lower bound on
// theta(x) = H_A(x, -Bx), which vanishes exactly on zer(A + B).

#ifndef HARAUX_GAUGES_H_
#define HARAUX_GAUGES_H_

#include <optional>

#include "haraux/bounds.h"
#include "haraux/core.h"
#include "haraux/functions.h"
#include "haraux/operators.h"
#include "haraux/scalar_root.h"

namespace haraux {

struct InclusionInstance {
  MonotoneOperator a;
  MonotoneOperator b;  // single-valued
  MonotoneOperator w;  // kernel
  double gamma = 1.0;
  std::optional<UniformModulus> modulus;  // of w
  std::optional<SeparableFunction> f;     // w = grad f when present

  void Validate() const;
};

// Pairing bound at u* = -Bx, i.e. with z the warped resolvent
// (W + gamma A)^{-1}(W x - gamma B x). Diagnostics add "modulus_bound" when
// a modulus is declared and "bregman_bound" when f is given.
BoundResult ThetaBound(const InclusionInstance& inst, const Vec& x,
                       const SolveConfig& cfg = {});

// Lower bound on G(x, y) = H_A(x, -By); ThetaBound is the case y = x.
BoundResult PrimalPrimalBound(const InclusionInstance& inst, const Vec& x,
                              const Vec& y, const SolveConfig& cfg = {});

struct KtInstance {
  MonotoneOperator c;      // on R^N
  MonotoneOperator d_inv;  // D^{-1} on R^M
  Matrix l;                // M x N
  double gamma = 1.0;
  MonotoneOperator w_x;      // kernel on R^N
  MonotoneOperator w_ystar;  // kernel on R^M
  std::optional<SeparableFunction> f;       // w_x = grad f
  std::optional<SeparableFunction> g_star;  // w_ystar = grad g*

  void Validate() const;
};

// Sum of the primal and dual pairing terms, each divided by gamma, with
// z_x = (W_X + gamma C)^{-1}(W_X x - gamma L^T y*) and
// z_y = (W_Y + gamma D^{-1})^{-1}(W_Y y* + gamma L x). Diagnostics:
// "component_primal", "component_dual", plus "modulus_bound" when both
// kernels carry a modulus and "bregman_bound" when f and g* are given.
BoundResult KtGaugeBound(const KtInstance& inst, const Vec& x,
                         const Vec& y_star, const SolveConfig& cfg = {});

// The same problem written on R^N x R^M: A = C x D^{-1}, B = skew(L),
// W = W_X x W_Y.
InclusionInstance KtAsInclusion(const KtInstance& inst);

// Kuhn-Tucker gauge with C = d phi, D^{-1} = d psi*, W_X = grad f and
// W_Y = grad g*, measured with symmetrized Bregman distances.
BoundResult FrGaugeBound(const SeparableFunction& f,
                         const SeparableFunction& g_star,
                         const SeparableFunction& phi,
                         const SeparableFunction& psi_star, const Matrix& l,
                         double gamma, const Vec& x, const Vec& y_star,
                         const SolveConfig& cfg = {});

}  // namespace haraux

#endif  // HARAUX_GAUGES_H_
