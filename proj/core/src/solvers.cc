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

#include "haraux/solvers.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "haraux/lambert_w.h"

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Kind = ScalarLegendre::Kind;

bool NearBoundary(double t, const Interval& dom) {
  return (std::isfinite(dom.lo) && t - dom.lo <= kNearBoundary) ||
         (std::isfinite(dom.hi) && dom.hi - t <= kNearBoundary);
}

double Burg1dProx(double gamma, double s) {
  // Positive root of z^2 - s z - gamma = 0, written to avoid cancellation.
  const double r = std::hypot(s, 2.0 * std::sqrt(gamma));
  return s >= 0.0 ? 0.5 * (s + r) : 2.0 * gamma / (r - s);
}

std::optional<double> ClosedScalarProx(const ScalarLegendre& phi,
                                       double gamma, double s,
                                       const SolveConfig& cfg) {
  switch (phi.kind()) {
    case Kind::kQuadratic:
      return s / (1.0 + gamma);
    case Kind::kBurg:
      return Burg1dProx(gamma, s);
    case Kind::kBoltzmannShannon:
      return gamma * LambertWOfExp(s / gamma - std::log(gamma));
    case Kind::kZero:
      return s;
    case Kind::kQuadPlus:
      return ScalarProx(*phi.inner(), gamma / (1.0 + gamma), s / (1.0 + gamma),
                        cfg);
    case Kind::kConjugate:
      // Moreau decomposition.
      return s - gamma * ScalarProx(*phi.inner(), 1.0 / gamma, s / gamma, cfg);
    default:
      return std::nullopt;
  }
}

double NumericScalarProx(const ScalarLegendre& phi, double gamma, double s,
                         const SolveConfig& cfg) {
  MonotoneEquation eq{
      .residual = [&](double t) { return t + gamma * phi.Deriv(t) - s; },
      .slope = [&](double t) { return 1.0 + gamma * phi.Deriv2(t); },
      .domain = phi.domain(),
      .start = s,
      .scale = 1.0 + std::abs(s),
  };
  return SolveMonotone(eq, cfg).t;
}

// One coordinate of a separable operator: either the derivative of a
// scalar function or t -> slope * t + offset.
struct CoordPart {
  const ScalarLegendre* fn = nullptr;
  double slope = 0.0;
  double offset = 0.0;

  Interval domain() const {
    return fn ? fn->domain() : Interval{-kInf, kInf};
  }
  bool inside(double t) const { return fn ? fn->InInterior(t) : true; }
  double value(double t) const {
    return fn ? fn->Deriv(t) : slope * t + offset;
  }
  double deriv(double t) const { return fn ? fn->Deriv2(t) : slope; }
};

bool AppendSeparableParts(const MonotoneOperator& op,
                          std::vector<CoordPart>& out) {
  const auto& v = op.variant();
  if (const auto* g = std::get_if<GradientOp>(&v)) {
    for (const auto& p : g->f.parts()) out.push_back({.fn = &p});
    return true;
  }
  if (const auto* s = std::get_if<SubdifferentialOp>(&v)) {
    for (const auto& p : s->f.parts()) out.push_back({.fn = &p});
    return true;
  }
  if (const auto* a = std::get_if<AffineOp>(&v)) {
    const std::size_t n = a->m.rows();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && a->m(i, j) != 0.0) return false;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({.slope = a->m(i, i), .offset = a->offset[i]});
    }
    return true;
  }
  if (const auto* p = std::get_if<ProductOp>(&v)) {
    for (const auto& b : p->blocks) {
      if (!AppendSeparableParts(*b, out)) return false;
    }
    return true;
  }
  return false;
}

std::optional<std::vector<CoordPart>> SeparableParts(
    const MonotoneOperator& op) {
  std::vector<CoordPart> parts;
  if (!AppendSeparableParts(op, parts)) return std::nullopt;
  return parts;
}

double FermiDiracOverEntropyAtUnitStep(double s) {
  // Root of 2 log z - log(1 - z) = s, i.e. z^2 + c z - c = 0 with c = e^s.
  if (s >= 0.0) return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * std::exp(-s)));
  const double h = std::exp(0.5 * s);
  return 2.0 * h / (h + std::sqrt(h * h + 4.0));
}

std::optional<double> ClosedCoordinate(const CoordPart& w, const CoordPart& a,
                                       double gamma, double s,
                                       const SolveConfig& cfg) {
  if (w.fn && a.fn) {
    if (w.fn->name() == a.fn->name() && w.fn->has_deriv_inv() &&
        w.fn->InConjInterior(s / (1.0 + gamma))) {
      return w.fn->DerivInv(s / (1.0 + gamma));
    }
    if (w.fn->kind() == Kind::kQuadratic) return ScalarProx(*a.fn, gamma, s, cfg);
    if (a.fn->kind() == Kind::kQuadratic) {
      return ScalarProx(*w.fn, 1.0 / gamma, s / gamma, cfg);
    }
    if (a.fn->kind() == Kind::kZero && w.fn->has_deriv_inv() &&
        w.fn->InConjInterior(s)) {
      return w.fn->DerivInv(s);
    }
    if (w.fn->kind() == Kind::kFermiDirac &&
        a.fn->kind() == Kind::kBoltzmannShannon && gamma == 1.0) {
      return FermiDiracOverEntropyAtUnitStep(s);
    }
    return std::nullopt;
  }
  if (!w.fn && a.fn) {
    if (!(w.slope > 0.0)) return std::nullopt;
    return ScalarProx(*a.fn, gamma / w.slope, (s - w.offset) / w.slope, cfg);
  }
  if (w.fn && !a.fn) {
    const double rhs = s - gamma * a.offset;
    if (a.slope == 0.0) {
      if (w.fn->has_deriv_inv() && w.fn->InConjInterior(rhs)) {
        return w.fn->DerivInv(rhs);
      }
      return std::nullopt;
    }
    if (!(a.slope > 0.0)) return std::nullopt;
    const double k = gamma * a.slope;
    return ScalarProx(*w.fn, 1.0 / k, rhs / k, cfg);
  }
  const double denom = w.slope + gamma * a.slope;
  if (!(denom > 0.0)) return std::nullopt;
  return (s - w.offset - gamma * a.offset) / denom;
}

Interval Intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

double CoordResidual(const CoordPart& w, const CoordPart& a, double gamma,
                     double s, double t) {
  if (!std::isfinite(t) || !w.inside(t) || !a.inside(t)) return kInf;
  return std::abs(w.value(t) + gamma * a.value(t) - s);
}

struct CoordSolution {
  double t;
  bool closed_form;
};

CoordSolution SolveCoordinate(const CoordPart& w, const CoordPart& a,
                              double gamma, double s, double start,
                              const SolveConfig& cfg) {
  const double tol = cfg.atol * (1.0 + std::abs(s));
  if (cfg.prefer_closed_form) {
    std::optional<double> t;
    try {
      t = ClosedCoordinate(w, a, gamma, s, cfg);
    } catch (const DomainError&) {
    } catch (const NoSolutionError&) {
    } catch (const ConvergenceError&) {
    }
    if (t && CoordResidual(w, a, gamma, s, *t) <= tol) return {*t, true};
  }
  const Interval dom = Intersect(w.domain(), a.domain());
  if (!(dom.lo < dom.hi)) {
    throw NoSolutionError("resolvent: empty coordinate domain");
  }
  double guess = start;
  if (w.fn && w.fn->has_deriv_inv() &&
      w.fn->InConjInterior(s / (1.0 + gamma))) {
    guess = w.fn->DerivInv(s / (1.0 + gamma));
  }
  if (!(std::isfinite(guess) && guess > dom.lo && guess < dom.hi) &&
      dom.bounded()) {
    guess = dom.lo + 0.5 * (dom.hi - dom.lo);
  }
  MonotoneEquation eq{
      .residual =
          [&](double t) { return w.value(t) + gamma * a.value(t) - s; },
      .slope = [&](double t) { return w.deriv(t) + gamma * a.deriv(t); },
      .domain = dom,
      .start = guess,
      .scale = 1.0 + std::abs(s),
  };
  return {SolveMonotone(eq, cfg).t, false};
}

std::optional<std::vector<MonotoneOperator>> SplitBlocks(
    const MonotoneOperator& op, const std::vector<std::size_t>& dims) {
  const auto& v = op.variant();
  if (const auto* p = std::get_if<ProductOp>(&v)) {
    if (op.BlockDims() != dims) return std::nullopt;
    std::vector<MonotoneOperator> out;
    for (const auto& b : p->blocks) out.push_back(*b);
    return out;
  }
  auto split_function = [&](const SeparableFunction& f, bool gradient) {
    std::vector<MonotoneOperator> out;
    std::size_t offset = 0;
    for (std::size_t d : dims) {
      std::vector<ScalarLegendre> parts(f.parts().begin() + offset,
                                        f.parts().begin() + offset + d);
      SeparableFunction g(std::move(parts));
      out.push_back(gradient ? MonotoneOperator::Gradient(std::move(g))
                             : MonotoneOperator::Subdifferential(std::move(g)));
      offset += d;
    }
    return out;
  };
  if (const auto* g = std::get_if<GradientOp>(&v)) {
    return split_function(g->f, true);
  }
  if (const auto* s = std::get_if<SubdifferentialOp>(&v)) {
    return split_function(s->f, false);
  }
  if (const auto* a = std::get_if<AffineOp>(&v)) {
    std::vector<std::size_t> block_of(op.dim());
    std::size_t offset = 0;
    for (std::size_t b = 0; b < dims.size(); ++b) {
      for (std::size_t k = 0; k < dims[b]; ++k) block_of[offset + k] = b;
      offset += dims[b];
    }
    for (std::size_t i = 0; i < op.dim(); ++i) {
      for (std::size_t j = 0; j < op.dim(); ++j) {
        if (block_of[i] != block_of[j] && a->m(i, j) != 0.0) {
          return std::nullopt;
        }
      }
    }
    std::vector<MonotoneOperator> out;
    offset = 0;
    for (std::size_t d : dims) {
      Matrix m(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) m(i, j) = a->m(offset + i, offset + j);
      }
      out.push_back(
          MonotoneOperator::Affine(std::move(m), a->offset.Segment(offset, d)));
      offset += d;
    }
    return out;
  }
  return std::nullopt;
}

double DefaultCoordinate(const Interval& dom) {
  if (dom.bounded()) return dom.lo + 0.5 * (dom.hi - dom.lo);
  if (std::isfinite(dom.lo)) return dom.lo + 1.0;
  if (std::isfinite(dom.hi)) return dom.hi - 1.0;
  return 0.0;
}

bool IsNearBoundary(const ResolventProblem& p, const Vec& z) {
  const Box bw = p.w.Domain();
  const Box ba = p.a.Domain();
  for (std::size_t i = 0; i < z.dim(); ++i) {
    if (NearBoundary(z[i], bw[i]) || NearBoundary(z[i], ba[i])) return true;
  }
  return false;
}

std::optional<Vec> SolveJoca16Closed(const ResolventProblem& p) {
  const auto* j = std::get_if<Joca16Op>(&p.a.variant());
  if (j == nullptr || p.gamma != 1.0) return std::nullopt;
  const SeparableFunction* f = nullptr;
  if (const auto* g = std::get_if<GradientOp>(&p.w.variant())) f = &g->f;
  if (const auto* s = std::get_if<SubdifferentialOp>(&p.w.variant())) {
    f = &s->f;
  }
  if (f == nullptr || f->part(0).name() != j->psi.name() ||
      f->part(1).name() != j->psi.name()) {
    return std::nullopt;
  }
  // With W = grad(psi (+) psi) the derivative terms cancel and W + A is the
  // linear map (b z1 - z2, z1 + b z2).
  const double b = j->beta;
  const double d = 1.0 + b * b;
  return Vec{(b * p.rhs[0] + p.rhs[1]) / d, (b * p.rhs[1] - p.rhs[0]) / d};
}

Vec DampedNewton(const ResolventProblem& p, const SolveConfig& cfg,
                 double tol) {
  const std::size_t n = p.rhs.dim();
  Vec z;
  if (p.start && p.w.InDomain(*p.start) && p.a.InDomain(*p.start)) {
    z = *p.start;
  } else {
    const Box bw = p.w.Domain();
    const Box ba = p.a.Domain();
    z = Vec::Generate(n, [&](std::size_t i) {
      return DefaultCoordinate(Intersect(bw[i], ba[i]));
    });
  }
  auto residual = [&](const Vec& v) {
    return p.w.Apply(v) + p.gamma * p.a.Apply(v) - p.rhs;
  };
  Vec f = residual(z);
  double merit = Norm(f);
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (NormInf(f) <= 1e-2 * tol) break;
    const Matrix jw = p.w.Jacobian(z);
    const Matrix ja = p.a.Jacobian(z);
    Eigen::MatrixXd jac(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      rhs(i) = -f[i];
      for (std::size_t k = 0; k < n; ++k) {
        jac(i, k) = jw(i, k) + p.gamma * ja(i, k);
      }
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
    if (!step.allFinite()) break;
    bool accepted = false;
    double t = 1.0;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      const Vec trial = Vec::Generate(
          n, [&](std::size_t i) { return z[i] + t * step(i); });
      if (!p.w.InDomain(trial) || !p.a.InDomain(trial)) continue;
      Vec ft = residual(trial);
      const double mt = Norm(ft);
      if (mt <= (1.0 - 1e-4 * t) * merit) {
        z = trial;
        f = std::move(ft);
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(NormInf(f) <= tol)) {
    std::ostringstream msg;
    msg << "resolvent: damped Newton stalled with residual " << NormInf(f)
        << " (tolerance " << tol << ")";
    throw ConvergenceError(msg.str());
  }
  return z;
}

ResolventSolution Finish(const ResolventProblem& p, Vec z, bool closed_form) {
  ResolventSolution out;
  out.residual = ResolventResidual(p, z);
  out.near_boundary = IsNearBoundary(p, z);
  out.closed_form = closed_form;
  out.z = std::move(z);
  return out;
}

}  // namespace

double ScalarProx(const ScalarLegendre& phi, double gamma, double s,
                  const SolveConfig& cfg) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw UsageError("prox: gamma must be positive");
  }
  if (!std::isfinite(s)) throw DomainError("prox: non-finite argument");
  if (cfg.prefer_closed_form) {
    std::optional<double> z;
    try {
      z = ClosedScalarProx(phi, gamma, s, cfg);
    } catch (const DomainError&) {
    } catch (const NoSolutionError&) {
    } catch (const ConvergenceError&) {
    }
    if (z && std::isfinite(*z) && phi.InInterior(*z) &&
        std::abs(*z + gamma * phi.Deriv(*z) - s) <=
            cfg.atol * (1.0 + std::abs(s))) {
      return *z;
    }
  }
  return NumericScalarProx(phi, gamma, s, cfg);
}

void ResolventProblem::Validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw UsageError("resolvent: gamma must be positive and finite");
  }
  if (w.dim() != a.dim() || rhs.dim() != w.dim()) {
    throw UsageError("resolvent: dimensions of W (" + std::to_string(w.dim()) +
                     "), A (" + std::to_string(a.dim()) + ") and rhs (" +
                     std::to_string(rhs.dim()) + ") disagree");
  }
  if (start && start->dim() != rhs.dim()) {
    throw UsageError("resolvent: start has the wrong dimension");
  }
}

double ResolventResidual(const ResolventProblem& p, const Vec& z) {
  if (!p.w.InDomain(z) || !p.a.InDomain(z)) return kInf;
  return NormInf(p.w.Apply(z) + p.gamma * p.a.Apply(z) - p.rhs);
}

ResolventSolution SolveResolventWithInfo(const ResolventProblem& p,
                                         const SolveConfig& cfg) {
  p.Validate();
  cfg.Validate();
  const double tol = cfg.atol * (1.0 + NormInf(p.rhs));

  ResolventSolution out;
  const auto w_parts = SeparableParts(p.w);
  const auto a_parts = SeparableParts(p.a);
  if (w_parts && a_parts) {
    const std::size_t n = p.rhs.dim();
    std::vector<double> z(n);
    bool all_closed = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double start = p.start ? (*p.start)[i] : kInf;
      const CoordSolution c = SolveCoordinate((*w_parts)[i], (*a_parts)[i],
                                              p.gamma, p.rhs[i], start, cfg);
      z[i] = c.t;
      all_closed = all_closed && c.closed_form;
    }
    out = Finish(p, Vec(std::move(z)), all_closed);
  } else if (p.w.BlockDims().size() > 1 || p.a.BlockDims().size() > 1) {
    const auto dims = p.a.BlockDims().size() > 1 ? p.a.BlockDims()
                                                 : p.w.BlockDims();
    const auto wb = SplitBlocks(p.w, dims);
    const auto ab = SplitBlocks(p.a, dims);
    if (wb && ab) {
      std::vector<double> z;
      bool all_closed = true;
      std::size_t offset = 0;
      for (std::size_t b = 0; b < dims.size(); ++b) {
        ResolventProblem sub{(*wb)[b], (*ab)[b], p.gamma,
                             p.rhs.Segment(offset, dims[b]), std::nullopt};
        if (p.start) sub.start = p.start->Segment(offset, dims[b]);
        const ResolventSolution s = SolveResolventWithInfo(sub, cfg);
        z.insert(z.end(), s.z.coords().begin(), s.z.coords().end());
        all_closed = all_closed && s.closed_form;
        offset += dims[b];
      }
      out = Finish(p, Vec(std::move(z)), all_closed);
    } else {
      out = Finish(p, DampedNewton(p, cfg, tol), false);
    }
  } else {
    std::optional<Vec> closed;
    if (cfg.prefer_closed_form) closed = SolveJoca16Closed(p);
    if (closed && ResolventResidual(p, *closed) <= tol) {
      out = Finish(p, *closed, true);
    } else {
      out = Finish(p, DampedNewton(p, cfg, tol), false);
    }
  }
  if (!(out.residual <= tol)) {
    std::ostringstream msg;
    msg << "resolvent: residual " << out.residual << " exceeds tolerance "
        << tol << " after re-substitution";
    throw ConvergenceError(msg.str());
  }
  return out;
}

Vec SolveResolvent(const ResolventProblem& p, const SolveConfig& cfg) {
  return SolveResolventWithInfo(p, cfg).z;
}

Vec Prox(const SeparableFunction& phi, double gamma, const Vec& x,
         const SolveConfig& cfg) {
  if (x.dim() != phi.dim()) throw UsageError("prox: dimension mismatch");
  return Vec::Generate(x.dim(), [&](std::size_t i) {
    return ScalarProx(phi.part(i), gamma, x[i], cfg);
  });
}

ResolventSolution BregmanProx(const SeparableFunction& f,
                              const SeparableFunction& phi, double gamma,
                              const Vec& s, const SolveConfig& cfg) {
  return SolveResolventWithInfo(
      {MonotoneOperator::Gradient(f), MonotoneOperator::Subdifferential(phi),
       gamma, s, std::nullopt},
      cfg);
}

ResolventSolution WarpedResolvent(const MonotoneOperator& w,
                                  const MonotoneOperator& a,
                                  const MonotoneOperator& b, double gamma,
                                  const Vec& x, const SolveConfig& cfg) {
  if (!w.InDomain(x) || !b.InDomain(x)) {
    throw DomainError("warped resolvent: x is outside dom W or dom B");
  }
  ResolventProblem p{w, a, gamma, w.Apply(x) - gamma * b.Apply(x),
                     std::nullopt};
  if (a.InDomain(x)) p.start = x;
  return SolveResolventWithInfo(p, cfg);
}

}  // namespace haraux
