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
#include <limits>
#include <string>
#include <utility>

#include "haraux/solvers.h"

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Interval kRealLine{-kInf, kInf};

double Logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double SoftplusValue(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double FermiDiracValue(double t) {
  return t * std::log(t) + (1.0 - t) * std::log1p(-t);
}

XReal ValueOnHull(double t, const Interval& dom,
                  const std::optional<double>& at_lo,
                  const std::optional<double>& at_hi,
                  const ScalarLegendre::Map& value) {
  if (std::isnan(t)) throw DomainError("function value: NaN argument");
  if (t > dom.lo && t < dom.hi) return XReal(value(t));
  if (t == dom.lo && at_lo) return XReal(*at_lo);
  if (t == dom.hi && at_hi) return XReal(*at_hi);
  return XReal::Infinity();
}

bool InOpenShrunk(double t, const Interval& dom) {
  return std::isfinite(t) && t > dom.lo + kInteriorMargin &&
         t < dom.hi - kInteriorMargin;
}

}  // namespace

ScalarLegendre::ScalarLegendre(Definition def) : def_(std::move(def)) {
  if (!def_.value || !def_.deriv || !def_.deriv2 || !def_.conj_value) {
    throw UsageError("ScalarLegendre '" + def_.name +
                     "': value, deriv, deriv2 and conj_value are required");
  }
  if (!(def_.dom.lo < def_.dom.hi)) {
    throw UsageError("ScalarLegendre '" + def_.name + "': empty domain");
  }
}

bool ScalarLegendre::InInterior(double t) const {
  return InOpenShrunk(t, def_.dom);
}

bool ScalarLegendre::InConjInterior(double s) const {
  return InOpenShrunk(s, def_.conj_dom);
}

XReal ScalarLegendre::Value(double t) const {
  return ValueOnHull(t, def_.dom, def_.value_at_lo, def_.value_at_hi,
                     def_.value);
}

XReal ScalarLegendre::ConjValue(double s) const {
  return ValueOnHull(s, def_.conj_dom, def_.conj_value_at_lo,
                     def_.conj_value_at_hi, def_.conj_value);
}

double ScalarLegendre::Deriv(double t) const {
  if (!InInterior(t)) {
    throw DomainError(def_.name + ": derivative requested at " +
                      std::to_string(t) + ", outside the open domain");
  }
  return def_.deriv(t);
}

double ScalarLegendre::Deriv2(double t) const {
  if (!InInterior(t)) {
    throw DomainError(def_.name + ": second derivative requested at " +
                      std::to_string(t) + ", outside the open domain");
  }
  return def_.deriv2(t);
}

double ScalarLegendre::DerivInv(double s) const {
  if (!def_.deriv_inv) {
    throw UsageError(def_.name + " has no inverse derivative");
  }
  if (!InConjInterior(s)) {
    throw DomainError(def_.name + ": inverse derivative requested at " +
                      std::to_string(s) +
                      ", outside the open conjugate domain");
  }
  const double t = def_.deriv_inv(s);
  if (!std::isfinite(t)) {
    throw DomainError(def_.name + ": inverse derivative overflow");
  }
  return t;
}

ScalarLegendre Quadratic() {
  return ScalarLegendre({
      .name = "quadratic",
      .kind = ScalarLegendre::Kind::kQuadratic,
      .dom = kRealLine,
      .value = [](double t) { return 0.5 * t * t; },
      .deriv = [](double t) { return t; },
      .deriv2 = [](double) { return 1.0; },
      .deriv_inv = [](double s) { return s; },
      .conj_dom = kRealLine,
      .conj_value = [](double s) { return 0.5 * s * s; },
  });
}

ScalarLegendre Burg() {
  return ScalarLegendre({
      .name = "burg",
      .kind = ScalarLegendre::Kind::kBurg,
      .dom = {0.0, kInf},
      .value = [](double t) { return -std::log(t); },
      .deriv = [](double t) { return -1.0 / t; },
      .deriv2 = [](double t) { return 1.0 / (t * t); },
      .deriv_inv = [](double s) { return -1.0 / s; },
      .conj_dom = {-kInf, 0.0},
      .conj_value = [](double s) { return -1.0 - std::log(-s); },
  });
}

ScalarLegendre BoltzmannShannon() {
  return ScalarLegendre({
      .name = "boltzmann_shannon",
      .kind = ScalarLegendre::Kind::kBoltzmannShannon,
      .dom = {0.0, kInf},
      .value_at_lo = 0.0,
      .value = [](double t) { return t * std::log(t) - t; },
      .deriv = [](double t) { return std::log(t); },
      .deriv2 = [](double t) { return 1.0 / t; },
      .deriv_inv = [](double s) { return std::exp(s); },
      .conj_dom = kRealLine,
      .conj_value = [](double s) { return std::exp(s); },
  });
}

ScalarLegendre FermiDirac() {
  return ScalarLegendre({
      .name = "fermi_dirac",
      .kind = ScalarLegendre::Kind::kFermiDirac,
      .dom = {0.0, 1.0},
      .value_at_lo = 0.0,
      .value_at_hi = 0.0,
      .value = FermiDiracValue,
      .deriv = [](double t) { return std::log(t) - std::log1p(-t); },
      .deriv2 = [](double t) { return 1.0 / (t * (1.0 - t)); },
      .deriv_inv = Logistic,
      .conj_dom = kRealLine,
      .conj_value = SoftplusValue,
  });
}

ScalarLegendre Softplus() {
  return ScalarLegendre({
      .name = "softplus",
      .kind = ScalarLegendre::Kind::kSoftplus,
      .dom = kRealLine,
      .value = SoftplusValue,
      .deriv = Logistic,
      .deriv2 =
          [](double t) {
            const double s = Logistic(t);
            return s * (1.0 - s);
          },
      .deriv_inv = [](double s) { return std::log(s) - std::log1p(-s); },
      .conj_dom = {0.0, 1.0},
      .conj_value_at_lo = 0.0,
      .conj_value_at_hi = 0.0,
      .conj_value = FermiDiracValue,
  });
}

ScalarLegendre ZeroFunction() {
  return ScalarLegendre({
      .name = "zero",
      .kind = ScalarLegendre::Kind::kZero,
      .dom = kRealLine,
      .value = [](double) { return 0.0; },
      .deriv = [](double) { return 0.0; },
      .deriv2 = [](double) { return 0.0; },
      // The conjugate is the indicator of {0}: a degenerate closed domain
      // whose only point carries the value 0.
      .conj_dom = {0.0, 0.0},
      .conj_value_at_lo = 0.0,
      .conj_value_at_hi = 0.0,
      .conj_value = [](double) { return 0.0; },
      .legendre = false,
  });
}

ScalarLegendre QuadPlus(const ScalarLegendre& inner) {
  auto psi = std::make_shared<const ScalarLegendre>(inner);
  const Interval dom = inner.domain();
  auto shift = [](const Interval& d, bool lo, const ScalarLegendre& f)
      -> std::optional<double> {
    const double end = lo ? d.lo : d.hi;
    if (!std::isfinite(end)) return std::nullopt;
    const XReal v = f.Value(end);
    if (!v.is_finite()) return std::nullopt;
    return 0.5 * end * end + v.value();
  };
  ScalarLegendre::Definition def{
      .name = "quad_plus:" + inner.name(),
      .kind = ScalarLegendre::Kind::kQuadPlus,
      .dom = dom,
      .value_at_lo = shift(dom, true, inner),
      .value_at_hi = shift(dom, false, inner),
      .value = [psi](double t) { return 0.5 * t * t + psi->Value(t).value(); },
      .deriv = [psi](double t) { return t + psi->Deriv(t); },
      .deriv2 = [psi](double t) { return 1.0 + psi->Deriv2(t); },
      .deriv_inv = [psi](double s) { return ScalarProx(*psi, 1.0, s); },
      .conj_dom = kRealLine,
      .conj_value =
          [psi](double s) {
            const double p = ScalarProx(*psi, 1.0, s);
            return 0.5 * s * s -
                   (psi->Value(p).value() + 0.5 * (s - p) * (s - p));
          },
      .legendre = true,
      .inner = psi,
  };
  return ScalarLegendre(std::move(def));
}

ScalarLegendre Conjugate(const ScalarLegendre& f) {
  if (!f.is_legendre() || !f.has_deriv_inv()) {
    throw UsageError("Conjugate: '" + f.name() + "' is not Legendre");
  }
  auto g = std::make_shared<const ScalarLegendre>(f);
  auto end_value = [&](double end) -> std::optional<double> {
    if (!std::isfinite(end)) return std::nullopt;
    const XReal v = f.ConjValue(end);
    if (!v.is_finite()) return std::nullopt;
    return v.value();
  };
  auto own_end_value = [&](double end) -> std::optional<double> {
    if (!std::isfinite(end)) return std::nullopt;
    const XReal v = f.Value(end);
    if (!v.is_finite()) return std::nullopt;
    return v.value();
  };
  ScalarLegendre::Definition def{
      .name = "conj:" + f.name(),
      .kind = ScalarLegendre::Kind::kConjugate,
      .dom = f.conj_domain(),
      .value_at_lo = end_value(f.conj_domain().lo),
      .value_at_hi = end_value(f.conj_domain().hi),
      .value = [g](double s) { return g->ConjValue(s).value(); },
      .deriv = [g](double s) { return g->DerivInv(s); },
      .deriv2 =
          [g](double s) { return 1.0 / g->Deriv2(g->DerivInv(s)); },
      .deriv_inv = [g](double t) { return g->Deriv(t); },
      .conj_dom = f.domain(),
      .conj_value_at_lo = own_end_value(f.domain().lo),
      .conj_value_at_hi = own_end_value(f.domain().hi),
      .conj_value = [g](double t) { return g->Value(t).value(); },
      .legendre = true,
      .inner = g,
  };
  return ScalarLegendre(std::move(def));
}

ScalarLegendre ScalarByName(const std::string& name) {
  constexpr std::string_view kQuadPlusPrefix = "quad_plus:";
  if (name.starts_with(kQuadPlusPrefix)) {
    return QuadPlus(ScalarByName(name.substr(kQuadPlusPrefix.size())));
  }
  constexpr std::string_view kConjPrefix = "conj:";
  if (name.starts_with(kConjPrefix)) {
    return Conjugate(ScalarByName(name.substr(kConjPrefix.size())));
  }
  if (name == "quadratic") return Quadratic();
  if (name == "burg") return Burg();
  if (name == "boltzmann_shannon") return BoltzmannShannon();
  if (name == "fermi_dirac") return FermiDirac();
  if (name == "softplus") return Softplus();
  if (name == "zero") return ZeroFunction();
  throw UsageError("unknown function '" + name + "'");
}

SeparableFunction::SeparableFunction(ScalarLegendre part, std::size_t dim) {
  if (dim == 0) throw UsageError("SeparableFunction: dim must be >= 1");
  parts_.assign(dim, part);
}

SeparableFunction::SeparableFunction(std::vector<ScalarLegendre> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) throw UsageError("SeparableFunction: no parts");
}

std::string SeparableFunction::name() const {
  std::string out = parts_.front().name();
  for (const auto& p : parts_) {
    if (p.name() != parts_.front().name()) {
      out.clear();
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) out += "|";
        out += parts_[i].name();
      }
      break;
    }
  }
  return out;
}

bool SeparableFunction::is_legendre() const {
  for (const auto& p : parts_) {
    if (!p.is_legendre()) return false;
  }
  return true;
}

bool SeparableFunction::InInterior(const Vec& x) const {
  if (x.dim() != dim()) throw UsageError("SeparableFunction: bad dimension");
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!parts_[i].InInterior(x[i])) return false;
  }
  return true;
}

bool SeparableFunction::InConjInterior(const Vec& u_star) const {
  if (u_star.dim() != dim()) {
    throw UsageError("SeparableFunction: bad dimension");
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!parts_[i].InConjInterior(u_star[i])) return false;
  }
  return true;
}

XReal SeparableFunction::Value(const Vec& x) const {
  if (x.dim() != dim()) throw UsageError("Eval: dimension mismatch");
  XReal sum(0.0);
  for (std::size_t i = 0; i < dim(); ++i) sum = sum + parts_[i].Value(x[i]);
  return sum;
}

XReal SeparableFunction::ConjValue(const Vec& u_star) const {
  if (u_star.dim() != dim()) {
    throw UsageError("ConjugateEval: dimension mismatch");
  }
  XReal sum(0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    sum = sum + parts_[i].ConjValue(u_star[i]);
  }
  return sum;
}

Vec SeparableFunction::Gradient(const Vec& x) const {
  if (x.dim() != dim()) throw UsageError("Gradient: dimension mismatch");
  return Vec::Generate(dim(),
                       [&](std::size_t i) { return parts_[i].Deriv(x[i]); });
}

Vec SeparableFunction::ConjGradient(const Vec& u_star) const {
  if (u_star.dim() != dim()) {
    throw UsageError("ConjGradient: dimension mismatch");
  }
  return Vec::Generate(
      dim(), [&](std::size_t i) { return parts_[i].DerivInv(u_star[i]); });
}

CompositeQuadPlus::CompositeQuadPlus(SeparableFunction psi)
    : psi_(std::move(psi)) {}

std::string CompositeQuadPlus::name() const {
  return "quad_plus:" + psi_.name();
}

SeparableFunction CompositeQuadPlus::AsSeparable() const {
  std::vector<ScalarLegendre> parts;
  parts.reserve(dim());
  for (const auto& p : psi_.parts()) parts.push_back(QuadPlus(p));
  return SeparableFunction(std::move(parts));
}

XReal CompositeQuadPlus::Value(const Vec& x) const {
  return psi_.Value(x) + XReal(0.5 * NormSquared(x));
}

XReal CompositeQuadPlus::ConjValue(const Vec& u_star) const {
  return XReal(0.5 * NormSquared(u_star) - MoreauEnvelope(psi_, u_star));
}

Vec CompositeQuadPlus::Gradient(const Vec& x) const {
  return x + psi_.Gradient(x);
}

Vec CompositeQuadPlus::ConjGradient(const Vec& u_star) const {
  return Prox(psi_, 1.0, u_star);
}

std::size_t Dim(const ConvexFunction& phi) {
  return std::visit([](const auto& f) { return f.dim(); }, phi);
}

std::string Name(const ConvexFunction& phi) {
  return std::visit([](const auto& f) { return f.name(); }, phi);
}

SeparableFunction AsSeparable(const ConvexFunction& phi) {
  if (const auto* sep = std::get_if<SeparableFunction>(&phi)) return *sep;
  return std::get<CompositeQuadPlus>(phi).AsSeparable();
}

ConvexFunction FunctionByName(const std::string& name, std::size_t dim) {
  constexpr std::string_view kQuadPlusPrefix = "quad_plus:";
  if (name.starts_with(kQuadPlusPrefix)) {
    return CompositeQuadPlus(SeparableFunction(
        ScalarByName(name.substr(kQuadPlusPrefix.size())), dim));
  }
  return SeparableFunction(ScalarByName(name), dim);
}

XReal Eval(const ConvexFunction& phi, const Vec& x) {
  return std::visit([&](const auto& f) { return f.Value(x); }, phi);
}

XReal ConjugateEval(const ConvexFunction& phi, const Vec& u_star) {
  return std::visit([&](const auto& f) { return f.ConjValue(u_star); }, phi);
}

Vec Gradient(const ConvexFunction& phi, const Vec& x) {
  return std::visit([&](const auto& f) { return f.Gradient(x); }, phi);
}

XReal Bregman(const SeparableFunction& f, const Vec& x, const Vec& y) {
  CheckSameDim(x, y, "Bregman");
  if (x.dim() != f.dim()) throw UsageError("Bregman: dimension mismatch");
  if (!f.InInterior(y)) return XReal::Infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const ScalarLegendre& part = f.part(i);
    const XReal fx = part.Value(x[i]);
    if (!fx.is_finite()) return XReal::Infinity();
    sum += fx.value() - part.Value(y[i]).value() -
           (x[i] - y[i]) * part.Deriv(y[i]);
  }
  return XReal(sum);
}

XReal FenchelYoung(const ConvexFunction& phi, const DualPair& p) {
  if (p.dim() != Dim(phi)) {
    throw UsageError("FenchelYoung: dimension mismatch");
  }
  if (const auto* comp = std::get_if<CompositeQuadPlus>(&phi)) {
    const XReal psi_x = comp->psi().Value(p.x());
    if (!psi_x.is_finite()) return XReal::Infinity();
    return XReal(0.5 * NormSquared(p.x() - p.u_star()) + psi_x.value() -
                 MoreauEnvelope(comp->psi(), p.u_star()));
  }
  const auto& f = std::get<SeparableFunction>(phi);
  // Summing the coordinate gaps keeps each (nonnegative) term intact.
  XReal sum(0.0);
  for (std::size_t i = 0; i < f.dim(); ++i) {
    const XReal term = f.part(i).Value(p.x()[i]) +
                       f.part(i).ConjValue(p.u_star()[i]);
    sum = sum + (term - p.x()[i] * p.u_star()[i]);
  }
  return sum;
}

double MoreauEnvelope(const SeparableFunction& psi, const Vec& x) {
  if (x.dim() != psi.dim()) {
    throw UsageError("MoreauEnvelope: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const double p = ScalarProx(psi.part(i), 1.0, x[i]);
    const XReal v = psi.part(i).Value(p);
    if (!v.is_finite()) {
      throw ConsistencyError("MoreauEnvelope: prox left the domain");
    }
    sum += v.value() + 0.5 * (x[i] - p) * (x[i] - p);
  }
  return sum;
}

}  // namespace haraux
