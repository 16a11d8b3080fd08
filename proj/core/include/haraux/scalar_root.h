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

// Guaranteed-bracket root finding for strictly increasing scalar residuals
// on an open interval. This is the workhorse behind every coordinatewise
// resolvent and proximity computation.

#ifndef HARAUX_SCALAR_ROOT_H_
#define HARAUX_SCALAR_ROOT_H_

#include <functional>

#include "haraux/core.h"

namespace haraux {

struct SolveConfig {
  double atol = 1e-12;
  int max_iter = 200;
  double bracket_expand = 2.0;
  // Use catalog closed forms where they exist. Tests switch this off to
  // compare the closed forms against the generic root-finder.
  bool prefer_closed_form = true;

  // Throws UsageError unless atol > 0, max_iter >= 1, bracket_expand > 1.
  void Validate() const;
};

struct MonotoneEquation {
  // Strictly increasing on the open interval `domain`.
  std::function<double(double)> residual;
  // Derivative of `residual`; optional, enables Newton polishing.
  std::function<double(double)> slope;
  Interval domain;
  // Interior starting point; replaced by a default when outside the domain.
  double start = 0.0;
  // The solve succeeds once |residual| <= atol * scale.
  double scale = 1.0;
};

struct ScalarRoot {
  double t;
  double residual;
  int iterations;
};

// Expands from `start` by factors of cfg.bracket_expand until the residual
// changes sign (finite ends are approached but never evaluated), bisects
// the bracket for up to 80 steps, then polishes with safeguarded Newton.
// Throws NoSolutionError if no sign change exists inside the domain and
// ConvergenceError if the iteration budget runs out or the final residual
// misses the tolerance. The latter includes roots so ill-conditioned that
// no double meets the tolerance; the message then names the bracketing
// neighbours.
ScalarRoot SolveMonotone(const MonotoneEquation& eq, const SolveConfig& cfg);

}  // namespace haraux

#endif  // HARAUX_SCALAR_ROOT_H_
