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

// Datasets comparing the new Fenchel-Young lower bounds with the classical
// proximal bound: Burg entropy at three step sizes and the
// Fermi-Dirac / Boltzmann-Shannon pair at gamma = 1.

#ifndef HARAUX_CLI_FIGURE1_H_
#define HARAUX_CLI_FIGURE1_H_

#include <string>
#include <vector>

#include "haraux/scalar_root.h"

namespace haraux::cli {

// Points per sweep.
inline constexpr int kFigure1Points = 201;

struct Figure1Row {
  // "x" for the sweep in x at fixed u*, "u" for the sweep in u*.
  char sweep;
  double x;
  double u_star;
  double new_bound;
  double carlier_bound;
  double exact_l;
};

struct Figure1Panel {
  std::string id;
  std::string title;
  double gamma;
  std::vector<Figure1Row> rows;
};

// Burg panels: x over [0.05, 5] at u* = -1, then u* over [-5, -0.05] at
// x = 1. Entropy panel: x over [0.01, 0.99] at u* = 1, then at u* = -1.
std::vector<Figure1Panel> ComputeFigure1(const SolveConfig& cfg = {});

// Header: x,u_star,new_bound,carlier_bound,exact_L.
std::string Figure1Csv(const Figure1Panel& panel);
std::string Figure1Svg(const Figure1Panel& panel);

}  // namespace haraux::cli

#endif  // HARAUX_CLI_FIGURE1_H_
