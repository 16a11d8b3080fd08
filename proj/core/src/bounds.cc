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

#include "haraux/bounds.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "haraux/solvers.h"

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MethodEntry {
  BoundMethod method;
  const char* name;
};

constexpr MethodEntry kMethods[] = {
    {BoundMethod::kPairing, "pairing"},
    {BoundMethod::kModulus, "modulus"},
    {BoundMethod::kStrong, "strong"},
    {BoundMethod::kBregman, "bregman"},
    {BoundMethod::kLegendreSelf, "legendre_self"},
    {BoundMethod::kCarlierHaraux, "carlier_haraux"},
    {BoundMethod::kCarlierFy, "carlier_fy"},
    {BoundMethod::kBurgClosed, "burg_closed"},
    {BoundMethod::kFermiDiracClosed, "fermi_dirac_closed"},
};

void CheckGamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw UsageError("gamma must be positive and finite");
  }
}

// Applies the sign convention shared by all bounds.
BoundResult Finish(BoundMethod method, double gamma, double raw, Vec z,
                   double residual, bool near_boundary) {
  BoundResult r;
  r.method = method;
  r.gamma = gamma;
  r.z = std::move(z);
  r.diagnostics["residual"] = residual;
  r.diagnostics["near_boundary"] = near_boundary ? 1.0 : 0.0;
  if (std::isnan(raw)) {
    throw ConsistencyError(MethodName(method) + ": bound evaluated to NaN");
  }
  if (raw < -kNegativeSlack) {
    std::ostringstream msg;
    msg << MethodName(method) << ": bound " << raw
        << " is negative beyond rounding";
    throw ConsistencyError(msg.str());
  }
  if (raw < 0.0) {
    r.diagnostics["clamped"] = raw;
    raw = 0.0;
  }
  r.value = raw;
  return r;
}

ResolventSolution SolveAt(const MonotoneOperator& w, const MonotoneOperator& a,
                          const DualPair& p, double gamma,
                          const SolveConfig& cfg) {
  CheckGamma(gamma);
  if (p.dim() != w.dim()) {
    throw UsageError("bound: point dimension " + std::to_string(p.dim()) +
                     " does not match operator dimension " +
                     std::to_string(w.dim()));
  }
  if (!w.InDomain(p.x())) {
    throw DomainError("bound: x is outside the domain of " + w.name());
  }
  ResolventProblem prob{w, a, gamma, w.Apply(p.x()) + gamma * p.u_star(),
                        std::nullopt};
  if (a.InDomain(p.x())) prob.start = p.x();
  return SolveResolventWithInfo(prob, cfg);
}

bool AllKind(const SeparableFunction& f, ScalarLegendre::Kind kind) {
  for (const auto& part : f.parts()) {
    if (part.kind() != kind) return false;
  }
  return true;
}

double Logit(double t) { return std::log(t) - std::log1p(-t); }

// Records the generic solver's answer next to a closed-form z.
void CrossCheck(BoundResult& r, const SeparableFunction& f,
                const SeparableFunction& phi, const DualPair& p,
                double gamma, SolveConfig cfg) {
  cfg.prefer_closed_form = false;
  try {
    const ResolventSolution s =
        BregmanProx(f, phi, gamma, f.Gradient(p.x()) + gamma * p.u_star(), cfg);
    r.diagnostics["solver_z_gap"] = NormInf(s.z - r.z);
  } catch (const std::exception&) {
    r.diagnostics["solver_failed"] = 1.0;
  }
}

}  // namespace

std::string MethodName(BoundMethod method) {
  for (const auto& e : kMethods) {
    if (e.method == method) return e.name;
  }
  return "unknown";
}

BoundMethod ParseMethod(const std::string& name) {
  for (const auto& e : kMethods) {
    if (name == e.name) return e.method;
  }
  throw UsageError("unknown bound method '" + name + "'");
}

const std::vector<BoundMethod>& AllMethods() {
  static const std::vector<BoundMethod> all = [] {
    std::vector<BoundMethod> v;
    for (const auto& e : kMethods) v.push_back(e.method);
    return v;
  }();
  return all;
}

BoundResult BoundPairing(const MonotoneOperator& w, const MonotoneOperator& a,
                         const DualPair& p, double gamma,
                         const SolveConfig& cfg) {
  const ResolventSolution s = SolveAt(w, a, p, gamma, cfg);
  const double value =
      Pairing(p.x() - s.z, w.Apply(p.x()) - w.Apply(s.z)) / gamma;
  return Finish(BoundMethod::kPairing, gamma, value, s.z, s.residual,
                s.near_boundary);
}

BoundResult BoundModulus(const MonotoneOperator& w,
                         const UniformModulus& modulus,
                         const MonotoneOperator& a, const DualPair& p,
                         double gamma, const SolveConfig& cfg) {
  const ResolventSolution s = SolveAt(w, a, p, gamma, cfg);
  const double value = modulus(Norm(p.x() - s.z)) / gamma;
  BoundResult r = Finish(BoundMethod::kModulus, gamma, value, s.z, s.residual,
                         s.near_boundary);
  r.diagnostics["pairing"] =
      Pairing(p.x() - s.z, w.Apply(p.x()) - w.Apply(s.z)) / gamma;
  return r;
}

BoundResult BoundStrong(const MonotoneOperator& w, double alpha,
                        const MonotoneOperator& a, const DualPair& p,
                        double gamma, const SolveConfig& cfg) {
  BoundResult r =
      BoundModulus(w, UniformModulus::Strong(alpha), a, p, gamma, cfg);
  r.method = BoundMethod::kStrong;
  return r;
}

BoundResult BoundBregman(const SeparableFunction& f, const MonotoneOperator& a,
                         const DualPair& p, double gamma,
                         const SolveConfig& cfg) {
  if (p.dim() != f.dim()) throw UsageError("bregman: dimension mismatch");
  if (!f.InInterior(p.x())) {
    throw DomainError("bregman: x is outside int dom " + f.name());
  }
  const ResolventSolution s =
      SolveAt(MonotoneOperator::Gradient(f), a, p, gamma, cfg);
  if (!f.InInterior(s.z)) {
    BoundResult r;
    r.method = BoundMethod::kBregman;
    r.gamma = gamma;
    r.z = s.z;
    r.value = kInf;
    r.usable = false;
    r.diagnostics["residual"] = s.residual;
    r.diagnostics["near_boundary"] = 1.0;
    return r;
  }
  const double value = (Bregman(f, p.x(), s.z).value() +
                        Bregman(f, s.z, p.x()).value()) /
                       gamma;
  return Finish(BoundMethod::kBregman, gamma, value, s.z, s.residual,
                s.near_boundary);
}

BoundResult BoundLegendreSelf(const ConvexFunction& phi, const DualPair& p,
                              double gamma, const SolveConfig& cfg) {
  CheckGamma(gamma);
  if (p.dim() != Dim(phi)) {
    throw UsageError("legendre_self: dimension mismatch");
  }
  const Vec& x = p.x();
  const Vec& u = p.u_star();
  Vec g;
  Vec z;
  double residual = 0.0;
  bool near = false;
  if (const auto* comp = std::get_if<CompositeQuadPlus>(&phi)) {
    if (!comp->psi().InInterior(x)) {
      throw DomainError("legendre_self: x is outside int dom " +
                        comp->psi().name());
    }
    g = comp->Gradient(x);
    const Vec s = (g + gamma * u) / (1.0 + gamma);
    z = Prox(comp->psi(), 1.0, s, cfg);
    residual = NormInf(comp->Gradient(z) - s);
  } else {
    const auto& f = std::get<SeparableFunction>(phi);
    if (!f.is_legendre()) {
      throw UsageError("legendre_self: " + f.name() + " is not Legendre");
    }
    if (!f.InInterior(x)) {
      throw DomainError("legendre_self: x is outside int dom " + f.name());
    }
    if (!f.InConjInterior(u)) {
      throw DomainError("legendre_self: u* is outside int dom of the "
                        "conjugate of " + f.name());
    }
    g = f.Gradient(x);
    const Vec s = (g + gamma * u) / (1.0 + gamma);
    z = f.ConjGradient(s);
    if (f.InInterior(z)) {
      residual = NormInf(f.Gradient(z) - s);
    } else {
      residual = kInf;
      near = true;
    }
    for (std::size_t i = 0; i < z.dim() && !near; ++i) {
      const Interval& d = f.part(i).domain();
      near = (std::isfinite(d.lo) && z[i] - d.lo <= kNearBoundary) ||
             (std::isfinite(d.hi) && d.hi - z[i] <= kNearBoundary);
    }
  }
  const double value = Pairing(x - z, g - u) / (1.0 + gamma);
  return Finish(BoundMethod::kLegendreSelf, gamma, value, z, residual, near);
}

BoundResult BoundCarlierHaraux(const MonotoneOperator& a, const DualPair& p,
                               double gamma, const SolveConfig& cfg) {
  const ResolventSolution s =
      SolveAt(MonotoneOperator::Identity(a.dim()), a, p, gamma, cfg);
  const double value = NormSquared(p.x() - s.z) / gamma;
  return Finish(BoundMethod::kCarlierHaraux, gamma, value, s.z, s.residual,
                s.near_boundary);
}

BoundResult BoundCarlierFy(const ConvexFunction& phi, const DualPair& p,
                           double gamma, const SolveConfig& cfg) {
  CheckGamma(gamma);
  if (p.dim() != Dim(phi)) throw UsageError("carlier_fy: dimension mismatch");
  const SeparableFunction sep = AsSeparable(phi);
  const Vec v = p.x() + gamma * p.u_star();
  const Vec z = Prox(sep, gamma, v, cfg);
  const double residual = NormInf(z + gamma * sep.Gradient(z) - v);
  bool near = false;
  for (std::size_t i = 0; i < z.dim(); ++i) {
    const Interval& d = sep.part(i).domain();
    near = near || (std::isfinite(d.lo) && z[i] - d.lo <= kNearBoundary) ||
           (std::isfinite(d.hi) && d.hi - z[i] <= kNearBoundary);
  }
  const double value = NormSquared(p.x() - z) / gamma;
  return Finish(BoundMethod::kCarlierFy, gamma, value, z, residual, near);
}

BoundResult BoundBurgClosed(const DualPair& p, double gamma,
                            const SolveConfig& cfg) {
  CheckGamma(gamma);
  const std::size_t n = p.dim();
  double value = 0.0;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = p.x()[i];
    const double mu = p.u_star()[i];
    if (!(xi > 0.0) || !(mu < 0.0)) {
      throw DomainError("burg_closed: needs x > 0 and u* < 0");
    }
    const double denom = 1.0 - gamma * xi * mu;
    z[i] = (1.0 + gamma) * xi / denom;
    const double q = 1.0 + xi * mu;
    value += gamma * q * q / ((1.0 + gamma) * denom);
  }
  const SeparableFunction burg(Burg(), n);
  Vec zv(std::move(z));
  const Vec rhs = burg.Gradient(p.x()) + gamma * p.u_star();
  const double residual = NormInf((1.0 + gamma) * burg.Gradient(zv) - rhs);
  BoundResult r = Finish(BoundMethod::kBurgClosed, gamma, value, zv, residual,
                         false);
  CrossCheck(r, burg, burg, p, gamma, cfg);
  return r;
}

double FermiDiracZetaFormula(double xi, double mu, double gamma) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw DomainError("fermi_dirac zeta: xi must lie in (0, 1)");
  }
  const double c = xi * std::exp(gamma * mu) / (1.0 - xi);
  // -c/2 + sqrt(c^2/4 + c), rationalized.
  return c / (0.5 * c + std::sqrt(0.25 * c * c + c));
}

BoundResult BoundFermiDiracClosed(const DualPair& p, double gamma,
                                  const SolveConfig& cfg) {
  CheckGamma(gamma);
  if (gamma != 1.0) {
    throw UsageError(
        "fermi_dirac_closed: the closed-form root is exact only for "
        "gamma = 1; use the bregman method");
  }
  const std::size_t n = p.dim();
  std::vector<double> z(n);
  double value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = p.x()[i];
    const double mu = p.u_star()[i];
    if (!(xi > 0.0 && xi < 1.0)) {
      throw DomainError("fermi_dirac_closed: x must lie in (0, 1)");
    }
    z[i] = FermiDiracZetaFormula(xi, mu, gamma);
    value += (xi - z[i]) * (Logit(xi) - Logit(z[i]));
  }
  value /= gamma;
  const SeparableFunction fd(FermiDirac(), n);
  const SeparableFunction bs(BoltzmannShannon(), n);
  Vec zv(std::move(z));
  double residual = kInf;
  if (fd.InInterior(zv)) {
    residual = NormInf(fd.Gradient(zv) + gamma * bs.Gradient(zv) -
                       fd.Gradient(p.x()) - gamma * p.u_star());
  }
  BoundResult r = Finish(BoundMethod::kFermiDiracClosed, gamma, value, zv,
                         residual, !fd.InInterior(zv));
  CrossCheck(r, fd, bs, p, gamma, cfg);
  return r;
}

BoundResult FyBoundDispatch(const ConvexFunction& phi, const DualPair& p,
                            double gamma, BoundMethod method,
                            const FyOptions& options,
                            const SolveConfig& cfg) {
  const SeparableFunction sep = AsSeparable(phi);
  const MonotoneOperator a = MonotoneOperator::Subdifferential(sep);
  auto kernel = [&] {
    return options.f ? MonotoneOperator::Gradient(*options.f)
                     : MonotoneOperator::Identity(sep.dim());
  };
  switch (method) {
    case BoundMethod::kPairing:
      return BoundPairing(kernel(), a, p, gamma, cfg);
    case BoundMethod::kModulus:
      if (!options.modulus) {
        throw UsageError("modulus: no modulus declared for the kernel");
      }
      return BoundModulus(kernel(), *options.modulus, a, p, gamma, cfg);
    case BoundMethod::kStrong: {
      double alpha = 1.0;
      if (options.modulus) {
        if (options.modulus->kind() != UniformModulus::Kind::kStrong) {
          throw UsageError("strong: the declared modulus is not quadratic");
        }
        alpha = options.modulus->alpha();
      } else if (options.f) {
        throw UsageError("strong: declare the strong monotonicity constant "
                         "of grad " + options.f->name());
      }
      return BoundStrong(kernel(), alpha, a, p, gamma, cfg);
    }
    case BoundMethod::kBregman:
      return BoundBregman(options.f.value_or(sep), a, p, gamma, cfg);
    case BoundMethod::kLegendreSelf:
      return BoundLegendreSelf(phi, p, gamma, cfg);
    case BoundMethod::kCarlierHaraux:
      return BoundCarlierHaraux(a, p, gamma, cfg);
    case BoundMethod::kCarlierFy:
      return BoundCarlierFy(phi, p, gamma, cfg);
    case BoundMethod::kBurgClosed:
      if (!std::holds_alternative<SeparableFunction>(phi) ||
          !AllKind(sep, ScalarLegendre::Kind::kBurg)) {
        throw UsageError("burg_closed: phi must be burg");
      }
      return BoundBurgClosed(p, gamma, cfg);
    case BoundMethod::kFermiDiracClosed:
      if (!std::holds_alternative<SeparableFunction>(phi) ||
          !AllKind(sep, ScalarLegendre::Kind::kBoltzmannShannon) ||
          (options.f &&
           !AllKind(*options.f, ScalarLegendre::Kind::kFermiDirac))) {
        throw UsageError("fermi_dirac_closed: needs phi = boltzmann_shannon "
                         "and f = fermi_dirac");
      }
      return BoundFermiDiracClosed(p, gamma, cfg);
  }
  throw UsageError("unknown bound method");
}

double FitzpatrickLowerBound(const BoundResult& bound, const DualPair& p) {
  return bound.value + Pairing(p.x(), p.u_star());
}

}  // namespace haraux
