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

// Closed-form convex functions on the real line and their separable sums:
// values, derivatives, conjugates, Bregman distances, Fenchel-Young gaps and
// Moreau envelopes.
//
// Catalog:
//   quadratic          t^2/2 on R, self-conjugate
//   burg               -log t on (0, inf); conjugate -1 - log(-s) on (-inf, 0)
//   boltzmann_shannon  t log t - t on [0, inf); conjugate exp(s)
//   fermi_dirac        t log t + (1-t) log(1-t) on [0, 1]; conjugate
//                      log(1 + exp(s))
//   softplus           log(1 + exp(t)); conjugate is fermi_dirac
//   zero               0 on R (convex, not Legendre); conjugate is the
//                      indicator of {0}
//   quad_plus:<inner>  t^2/2 + inner(t); gradient of the conjugate is
//                      prox_inner
//
// Boundary convention: values extend to the closed hull of the domain where
// the limit is finite (boltzmann_shannon(0) = 0, fermi_dirac(0) =
// fermi_dirac(1) = 0). Derivatives exist only on the open interior; a
// point closer than kInteriorMargin (the smallest normal double) to an open
// end counts as outside.

#ifndef HARAUX_FUNCTIONS_H_
#define HARAUX_FUNCTIONS_H_

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haraux/core.h"

namespace haraux {

inline constexpr double kInteriorMargin =
    std::numeric_limits<double>::min();

// A convex function of one real variable, given in closed form.
class ScalarLegendre {
 public:
  enum class Kind {
    kQuadratic,
    kBurg,
    kBoltzmannShannon,
    kFermiDirac,
    kSoftplus,
    kZero,
    kQuadPlus,
    kConjugate,
  };

  using Map = std::function<double(double)>;

  struct Definition {
    std::string name;
    Kind kind;
    Interval dom;
    std::optional<double> value_at_lo;
    std::optional<double> value_at_hi;
    Map value;
    Map deriv;
    Map deriv2;
    Map deriv_inv;  // empty when the function is not Legendre
    Interval conj_dom;
    std::optional<double> conj_value_at_lo;
    std::optional<double> conj_value_at_hi;
    Map conj_value;
    bool legendre = true;
    std::shared_ptr<const ScalarLegendre> inner;
  };

  explicit ScalarLegendre(Definition def);

  const std::string& name() const { return def_.name; }
  Kind kind() const { return def_.kind; }
  const Interval& domain() const { return def_.dom; }
  const Interval& conj_domain() const { return def_.conj_dom; }
  bool is_legendre() const { return def_.legendre; }
  bool has_deriv_inv() const { return static_cast<bool>(def_.deriv_inv); }
  // The wrapped function for kQuadPlus and kConjugate; null otherwise.
  const ScalarLegendre* inner() const { return def_.inner.get(); }

  bool InInterior(double t) const;
  bool InConjInterior(double s) const;

  // Value on the closed hull of the domain; +inf elsewhere.
  XReal Value(double t) const;
  XReal ConjValue(double s) const;

  // These throw DomainError outside the open interior (resp. the open
  // interior of the conjugate domain for DerivInv).
  double Deriv(double t) const;
  double Deriv2(double t) const;
  double DerivInv(double s) const;

 private:
  Definition def_;
};

ScalarLegendre Quadratic();
ScalarLegendre Burg();
ScalarLegendre BoltzmannShannon();
ScalarLegendre FermiDirac();
ScalarLegendre Softplus();
ScalarLegendre ZeroFunction();
// t^2/2 + inner(t).
ScalarLegendre QuadPlus(const ScalarLegendre& inner);
// The Legendre conjugate; throws UsageError if `f` is not Legendre.
ScalarLegendre Conjugate(const ScalarLegendre& f);

// Looks up "quadratic", "burg", "boltzmann_shannon", "fermi_dirac",
// "softplus", "zero", "quad_plus:<name>" or "conj:<name>". Throws
// UsageError otherwise.
ScalarLegendre ScalarByName(const std::string& name);

// x -> sum_i parts[i](x_i).
class SeparableFunction {
 public:
  SeparableFunction(ScalarLegendre part, std::size_t dim);
  explicit SeparableFunction(std::vector<ScalarLegendre> parts);

  std::size_t dim() const { return parts_.size(); }
  const ScalarLegendre& part(std::size_t i) const { return parts_[i]; }
  const std::vector<ScalarLegendre>& parts() const { return parts_; }
  std::string name() const;
  bool is_legendre() const;

  bool InInterior(const Vec& x) const;
  bool InConjInterior(const Vec& u_star) const;

  XReal Value(const Vec& x) const;
  XReal ConjValue(const Vec& u_star) const;
  Vec Gradient(const Vec& x) const;
  Vec ConjGradient(const Vec& u_star) const;

 private:
  std::vector<ScalarLegendre> parts_;
};

// phi = ||.||^2/2 + psi with psi separable.
class CompositeQuadPlus {
 public:
  explicit CompositeQuadPlus(SeparableFunction psi);

  const SeparableFunction& psi() const { return psi_; }
  std::size_t dim() const { return psi_.dim(); }
  std::string name() const;

  // The same function written coordinatewise with quad_plus parts.
  SeparableFunction AsSeparable() const;

  XReal Value(const Vec& x) const;
  // ||u*||^2/2 - (Moreau envelope of psi)(u*).
  XReal ConjValue(const Vec& u_star) const;
  Vec Gradient(const Vec& x) const;
  // prox_psi.
  Vec ConjGradient(const Vec& u_star) const;

 private:
  SeparableFunction psi_;
};

using ConvexFunction = std::variant<SeparableFunction, CompositeQuadPlus>;

std::size_t Dim(const ConvexFunction& phi);
std::string Name(const ConvexFunction& phi);
SeparableFunction AsSeparable(const ConvexFunction& phi);

// Parses a comma-free catalog name into a separable function of dimension
// `dim`; "quad_plus:<inner>" yields a CompositeQuadPlus.
ConvexFunction FunctionByName(const std::string& name, std::size_t dim);

XReal Eval(const ConvexFunction& phi, const Vec& x);
XReal ConjugateEval(const ConvexFunction& phi, const Vec& u_star);
Vec Gradient(const ConvexFunction& phi, const Vec& x);

// D_f(x, y) = f(x) - f(y) - <x - y, grad f(y)>, +inf unless y is interior.
XReal Bregman(const SeparableFunction& f, const Vec& x, const Vec& y);

// L_phi(x, u*) = phi(x) + phi*(u*) - <x, u*>.
XReal FenchelYoung(const ConvexFunction& phi, const DualPair& p);

// inf_y psi(y) + ||x - y||^2 / 2, attained at prox_psi(x).
double MoreauEnvelope(const SeparableFunction& psi, const Vec& x);

}  // namespace haraux

#endif  // HARAUX_FUNCTIONS_H_
