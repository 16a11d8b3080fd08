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

// Resolvents (W + gamma A)^{-1}, proximity operators, Bregman proximity
// operators and warped resolvents.
//
// Separable problems are solved coordinatewise with catalog closed forms
// where available and guaranteed-bracket root finding otherwise; block
// products are split; the planar rotation-type operator has a closed form
// at gamma = 1; everything else falls back to damped Newton. Every answer is
// re-substituted into its defining equation before it is returned.

#ifndef HARAUX_SOLVERS_H_
#define HARAUX_SOLVERS_H_

#include <optional>

#include "haraux/core.h"
#include "haraux/functions.h"
#include "haraux/operators.h"
#include "haraux/scalar_root.h"

namespace haraux {

// A point within this distance of a finite open boundary is flagged.
inline constexpr double kNearBoundary = 1e-12;

// (Id + gamma phi')^{-1}(s) for a scalar function.
double ScalarProx(const ScalarLegendre& phi, double gamma, double s,
                  const SolveConfig& cfg = {});

struct ResolventProblem {
  MonotoneOperator w;
  MonotoneOperator a;
  double gamma;
  Vec rhs;
  // Initial iterate for the iterative fallbacks; must lie in the domain.
  std::optional<Vec> start;

  // Throws UsageError on mismatched dimensions or gamma <= 0.
  void Validate() const;
};

struct ResolventSolution {
  Vec z;
  // ||W z + gamma A z - rhs||_inf.
  double residual = 0.0;
  bool closed_form = false;
  bool near_boundary = false;
};

// ||W z + gamma A z - rhs||_inf, or +inf when z is outside the domains.
double ResolventResidual(const ResolventProblem& p, const Vec& z);

// Solves W z + gamma A z = rhs. The returned z satisfies
// ResolventResidual <= cfg.atol * (1 + ||rhs||_inf). Throws NoSolutionError
// when no root exists inside the domain and ConvergenceError when the
// iteration budget runs out.
ResolventSolution SolveResolventWithInfo(const ResolventProblem& p,
                                         const SolveConfig& cfg = {});
Vec SolveResolvent(const ResolventProblem& p, const SolveConfig& cfg = {});

// prox_{gamma phi}(x) = (Id + gamma d phi)^{-1} x.
Vec Prox(const SeparableFunction& phi, double gamma, const Vec& x,
         const SolveConfig& cfg = {});

// (grad f + gamma d phi)^{-1}(s).
ResolventSolution BregmanProx(const SeparableFunction& f,
                              const SeparableFunction& phi, double gamma,
                              const Vec& s, const SolveConfig& cfg = {});

// (W + gamma A)^{-1}(W x - gamma B x).
ResolventSolution WarpedResolvent(const MonotoneOperator& w,
                                  const MonotoneOperator& a,
                                  const MonotoneOperator& b, double gamma,
                                  const Vec& x, const SolveConfig& cfg = {});

}  // namespace haraux

#endif  // HARAUX_SOLVERS_H_
