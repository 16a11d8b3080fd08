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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "haraux/solvers.h"

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckGamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw UsageError("gauge: gamma must be positive and finite");
  }
}

double SymmetrizedBregman(const SeparableFunction& f, const Vec& x,
                          const Vec& z) {
  const XReal sum = Bregman(f, x, z) + Bregman(f, z, x);
  return sum.is_finite() ? sum.value() : kInf;
}

struct Component {
  ResolventSolution s;
  double pairing;
};

Component SolveComponent(const MonotoneOperator& w, const MonotoneOperator& a,
                         double gamma, const Vec& point, const Vec& rhs,
                         const SolveConfig& cfg) {
  ResolventProblem p{w, a, gamma, rhs, std::nullopt};
  if (a.InDomain(point)) p.start = point;
  Component c{SolveResolventWithInfo(p, cfg), 0.0};
  c.pairing = Pairing(point - c.s.z, w.Apply(point) - w.Apply(c.s.z)) / gamma;
  return c;
}

double Clamp(double raw, const char* what) {
  if (raw < -kNegativeSlack) {
    throw ConsistencyError(std::string(what) + ": negative gauge component");
  }
  return std::max(raw, 0.0);
}

}  // namespace

void InclusionInstance::Validate() const {
  CheckGamma(gamma);
  if (a.dim() != b.dim() || a.dim() != w.dim()) {
    throw UsageError("inclusion: operator dimensions disagree");
  }
  if (f && f->dim() != w.dim()) {
    throw UsageError("inclusion: kernel function has the wrong dimension");
  }
}

BoundResult PrimalPrimalBound(const InclusionInstance& inst, const Vec& x,
                              const Vec& y, const SolveConfig& cfg) {
  inst.Validate();
  if (!inst.b.InDomain(y)) throw DomainError("gauge: y is outside dom B");
  const DualPair p(x, -inst.b.Apply(y));
  BoundResult r = BoundPairing(inst.w, inst.a, p, inst.gamma, cfg);
  if (inst.modulus) {
    r.diagnostics["modulus_bound"] =
        (*inst.modulus)(Norm(x - r.z)) / inst.gamma;
  }
  if (inst.f) {
    r.diagnostics["bregman_bound"] =
        SymmetrizedBregman(*inst.f, x, r.z) / inst.gamma;
  }
  return r;
}

BoundResult ThetaBound(const InclusionInstance& inst, const Vec& x,
                       const SolveConfig& cfg) {
  return PrimalPrimalBound(inst, x, x, cfg);
}

void KtInstance::Validate() const {
  CheckGamma(gamma);
  const std::size_t n = c.dim();
  const std::size_t m = d_inv.dim();
  if (l.rows() != m || l.cols() != n) {
    throw UsageError("kt: L must have shape " + std::to_string(m) + "x" +
                     std::to_string(n));
  }
  if (w_x.dim() != n || w_ystar.dim() != m) {
    throw UsageError("kt: kernel dimensions disagree with C and D^{-1}");
  }
  if ((f && f->dim() != n) || (g_star && g_star->dim() != m)) {
    throw UsageError("kt: kernel functions have the wrong dimension");
  }
}

BoundResult KtGaugeBound(const KtInstance& inst, const Vec& x,
                         const Vec& y_star, const SolveConfig& cfg) {
  inst.Validate();
  if (x.dim() != inst.c.dim() || y_star.dim() != inst.d_inv.dim()) {
    throw UsageError("kt: point dimensions disagree with the instance");
  }
  const double gamma = inst.gamma;
  const Component primal = SolveComponent(
      inst.w_x, inst.c, gamma, x,
      inst.w_x.Apply(x) - gamma * inst.l.TransposeMultiply(y_star), cfg);
  const Component dual = SolveComponent(
      inst.w_ystar, inst.d_inv, gamma, y_star,
      inst.w_ystar.Apply(y_star) + gamma * inst.l.Multiply(x), cfg);

  BoundResult r;
  r.method = BoundMethod::kPairing;
  r.gamma = gamma;
  r.z = Vec::Concat(primal.s.z, dual.s.z);
  const double cp = Clamp(primal.pairing, "kt primal");
  const double cd = Clamp(dual.pairing, "kt dual");
  r.value = cp + cd;
  r.diagnostics["component_primal"] = cp;
  r.diagnostics["component_dual"] = cd;
  r.diagnostics["residual"] = std::max(primal.s.residual, dual.s.residual);
  r.diagnostics["near_boundary"] =
      (primal.s.near_boundary || dual.s.near_boundary) ? 1.0 : 0.0;
  if (inst.w_x.modulus() && inst.w_ystar.modulus()) {
    r.diagnostics["modulus_bound"] =
        ((*inst.w_x.modulus())(Norm(x - primal.s.z)) +
         (*inst.w_ystar.modulus())(Norm(y_star - dual.s.z))) /
        gamma;
  }
  if (inst.f && inst.g_star) {
    r.diagnostics["bregman_bound"] =
        (SymmetrizedBregman(*inst.f, x, primal.s.z) +
         SymmetrizedBregman(*inst.g_star, y_star, dual.s.z)) /
        gamma;
  }
  return r;
}

InclusionInstance KtAsInclusion(const KtInstance& inst) {
  inst.Validate();
  InclusionInstance out{
      .a = MonotoneOperator::Product({inst.c, inst.d_inv}),
      .b = MonotoneOperator::Skew(inst.l),
      .w = MonotoneOperator::Product({inst.w_x, inst.w_ystar}),
      .gamma = inst.gamma,
  };
  if (inst.f && inst.g_star) {
    std::vector<ScalarLegendre> parts = inst.f->parts();
    parts.insert(parts.end(), inst.g_star->parts().begin(),
                 inst.g_star->parts().end());
    out.f = SeparableFunction(std::move(parts));
  }
  return out;
}

BoundResult FrGaugeBound(const SeparableFunction& f,
                         const SeparableFunction& g_star,
                         const SeparableFunction& phi,
                         const SeparableFunction& psi_star, const Matrix& l,
                         double gamma, const Vec& x, const Vec& y_star,
                         const SolveConfig& cfg) {
  CheckGamma(gamma);
  if (f.dim() != phi.dim() || g_star.dim() != psi_star.dim() ||
      l.rows() != g_star.dim() || l.cols() != f.dim() || x.dim() != f.dim() ||
      y_star.dim() != g_star.dim()) {
    throw UsageError("fr gauge: dimensions disagree");
  }
  if (!f.InInterior(x)) throw DomainError("fr gauge: x is outside int dom f");
  if (!g_star.InInterior(y_star)) {
    throw DomainError("fr gauge: y* is outside int dom g*");
  }
  const ResolventSolution zx = BregmanProx(
      f, phi, gamma, f.Gradient(x) - gamma * l.TransposeMultiply(y_star), cfg);
  const ResolventSolution zy =
      BregmanProx(g_star, psi_star, gamma,
                  g_star.Gradient(y_star) + gamma * l.Multiply(x), cfg);

  BoundResult r;
  r.method = BoundMethod::kBregman;
  r.gamma = gamma;
  r.z = Vec::Concat(zx.z, zy.z);
  const double cp = Clamp(SymmetrizedBregman(f, x, zx.z) / gamma, "fr primal");
  const double cd =
      Clamp(SymmetrizedBregman(g_star, y_star, zy.z) / gamma, "fr dual");
  r.value = cp + cd;
  r.usable = std::isfinite(r.value);
  r.diagnostics["component_primal"] = cp;
  r.diagnostics["component_dual"] = cd;
  r.diagnostics["residual"] = std::max(zx.residual, zy.residual);
  r.diagnostics["near_boundary"] =
      (zx.near_boundary || zy.near_boundary) ? 1.0 : 0.0;
  return r;
}

}  // namespace haraux
