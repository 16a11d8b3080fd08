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

// Lower bounds on the Haraux function H_A(x, u*) and on the Fenchel-Young
// function L_phi(x, u*).
//
// Every bound is built from an auxiliary point z solving
// W z + gamma A z = W x + gamma u*; the methods differ in the kernel W and
// in how the gap between x and z is measured.

#ifndef HARAUX_BOUNDS_H_
#define HARAUX_BOUNDS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "haraux/core.h"
#include "haraux/functions.h"
#include "haraux/operators.h"
#include "haraux/scalar_root.h"

namespace haraux {

enum class BoundMethod {
  kPairing,
  kModulus,
  kStrong,
  kBregman,
  kLegendreSelf,
  kCarlierHaraux,
  kCarlierFy,
  kBurgClosed,
  kFermiDiracClosed,
};

std::string MethodName(BoundMethod method);
// Throws UsageError for unknown names.
BoundMethod ParseMethod(const std::string& name);
const std::vector<BoundMethod>& AllMethods();

// Values in [-kNegativeSlack, 0) are rounding noise and are clamped to 0;
// anything below is reported as a ConsistencyError.
inline constexpr double kNegativeSlack = 1e-12;

struct BoundResult {
  double value = 0.0;
  Vec z;
  BoundMethod method = BoundMethod::kPairing;
  double gamma = 1.0;
  // Always has "residual" and "near_boundary"; "clamped" holds the raw value
  // when it was clamped to 0.
  std::map<std::string, double> diagnostics;
  // False when z left int dom f and the Bregman terms are infinite.
  bool usable = true;
};

// <x - z, W x - W z> / gamma with z = (W + gamma A)^{-1}(W x + gamma u*).
BoundResult BoundPairing(const MonotoneOperator& w, const MonotoneOperator& a,
                         const DualPair& p, double gamma,
                         const SolveConfig& cfg = {});

// modulus(||x - z||) / gamma for a W that is uniformly monotone with the
// given modulus. Diagnostics include the pairing value at the same z.
BoundResult BoundModulus(const MonotoneOperator& w,
                         const UniformModulus& modulus,
                         const MonotoneOperator& a, const DualPair& p,
                         double gamma, const SolveConfig& cfg = {});

// alpha ||x - z||^2 / gamma for an alpha-strongly monotone W.
BoundResult BoundStrong(const MonotoneOperator& w, double alpha,
                        const MonotoneOperator& a, const DualPair& p,
                        double gamma, const SolveConfig& cfg = {});

// (D_f(x, z) + D_f(z, x)) / gamma with W = grad f.
BoundResult BoundBregman(const SeparableFunction& f, const MonotoneOperator& a,
                         const DualPair& p, double gamma,
                         const SolveConfig& cfg = {});

// <x - grad phi*((grad phi(x) + gamma u*)/(1 + gamma)), grad phi(x) - u*>
// / (1 + gamma), a lower bound on L_phi. For phi = ||.||^2/2 + psi the
// gradient of the conjugate is prox_psi.
BoundResult BoundLegendreSelf(const ConvexFunction& phi, const DualPair& p,
                              double gamma, const SolveConfig& cfg = {});

// ||x - J_{gamma A}(x + gamma u*)||^2 / gamma.
BoundResult BoundCarlierHaraux(const MonotoneOperator& a, const DualPair& p,
                               double gamma, const SolveConfig& cfg = {});

// ||x - prox_{gamma phi}(x + gamma u*)||^2 / gamma.
BoundResult BoundCarlierFy(const ConvexFunction& phi, const DualPair& p,
                           double gamma, const SolveConfig& cfg = {});

// Burg entropy with f = phi: z_i = (1 + gamma) x_i / (1 - gamma x_i u_i) and
// value sum_i gamma (1 + x_i u_i)^2 / ((1 + gamma)(1 - gamma x_i u_i)).
// Needs x > 0 and u* < 0 coordinatewise.
BoundResult BoundBurgClosed(const DualPair& p, double gamma,
                            const SolveConfig& cfg = {});

// Root of (1 + gamma) log z - log(1 - z) = log(xi/(1 - xi)) + gamma mu in the
// form -c/2 + sqrt(c^2/4 + c), c = xi e^{gamma mu}/(1 - xi). This is the
// exact root only when gamma = 1.
double FermiDiracZetaFormula(double xi, double mu, double gamma);

// f = fermi_dirac over phi = boltzmann_shannon using the closed-form root.
// Throws UsageError unless gamma == 1, where the formula is exact.
BoundResult BoundFermiDiracClosed(const DualPair& p, double gamma,
                                  const SolveConfig& cfg = {});

struct FyOptions {
  // Kernel function: W = grad f. Identity kernel when absent (pairing,
  // modulus, strong); defaults to phi itself for bregman.
  std::optional<SeparableFunction> f;
  std::optional<UniformModulus> modulus;
};

// Bounds on L_phi(x, u*) through A = d phi.
BoundResult FyBoundDispatch(const ConvexFunction& phi, const DualPair& p,
                            double gamma, BoundMethod method,
                            const FyOptions& options = {},
                            const SolveConfig& cfg = {});

// F_A = H_A + <., .>: the lower bound transported to the Fitzpatrick
// function.
double FitzpatrickLowerBound(const BoundResult& bound, const DualPair& p);

}  // namespace haraux

#endif  // HARAUX_BOUNDS_H_
