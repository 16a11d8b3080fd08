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

#include "haraux_cli/figure1.h"

#include <cstdio>
#include <functional>
#include <utility>

#include "haraux/bounds.h"
#include "haraux/functions.h"
#include "haraux_cli/csv.h"
#include "haraux_cli/svg.h"

namespace haraux::cli {
namespace {

double Linspace(double lo, double hi, int k) {
  return lo + (hi - lo) * k / (kFigure1Points - 1);
}

using RowFn = std::function<Figure1Row(double x, double u)>;

void Sweep(Figure1Panel& panel, char sweep, double lo, double hi,
           double fixed, const RowFn& row) {
  for (int k = 0; k < kFigure1Points; ++k) {
    const double t = Linspace(lo, hi, k);
    Figure1Row r = sweep == 'x' ? row(t, fixed) : row(fixed, t);
    r.sweep = sweep;
    panel.rows.push_back(r);
  }
}

std::string GammaLabel(double gamma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", gamma);
  return buf;
}

}  // namespace

std::vector<Figure1Panel> ComputeFigure1(const SolveConfig& cfg) {
  std::vector<Figure1Panel> panels;
  const ConvexFunction burg = SeparableFunction(Burg(), 1);
  for (double gamma : {0.1, 1.0, 10.0}) {
    Figure1Panel panel{"burg_gamma" + GammaLabel(gamma),
                       "Burg entropy, gamma = " + GammaLabel(gamma), gamma,
                       {}};
    const RowFn row = [&](double x, double u) {
      const DualPair p(Vec{x}, Vec{u});
      return Figure1Row{0, x, u, BoundBurgClosed(p, gamma, cfg).value,
                        BoundCarlierFy(burg, p, gamma, cfg).value,
                        FenchelYoung(burg, p).value()};
    };
    Sweep(panel, 'x', 0.05, 5.0, -1.0, row);
    Sweep(panel, 'u', -5.0, -0.05, 1.0, row);
    panels.push_back(std::move(panel));
  }

  const ConvexFunction entropy = SeparableFunction(BoltzmannShannon(), 1);
  Figure1Panel panel{"fermi_dirac_gamma1",
                     "Fermi-Dirac kernel, Boltzmann-Shannon entropy, "
                     "gamma = 1",
                     1.0,
                     {}};
  const RowFn row = [&](double x, double u) {
    const DualPair p(Vec{x}, Vec{u});
    return Figure1Row{0, x, u, BoundFermiDiracClosed(p, 1.0, cfg).value,
                      BoundCarlierFy(entropy, p, 1.0, cfg).value,
                      FenchelYoung(entropy, p).value()};
  };
  Sweep(panel, 'x', 0.01, 0.99, 1.0, row);
  Sweep(panel, 'x', 0.01, 0.99, -1.0, row);
  panels.push_back(std::move(panel));
  return panels;
}

std::string Figure1Csv(const Figure1Panel& panel) {
  std::string out = "x,u_star,new_bound,carlier_bound,exact_L\n";
  for (const auto& r : panel.rows) {
    out += CsvLine({FormatDouble(r.x), FormatDouble(r.u_star),
                    FormatDouble(r.new_bound), FormatDouble(r.carlier_bound),
                    FormatDouble(r.exact_l)});
    out += '\n';
  }
  return out;
}

std::string Figure1Svg(const Figure1Panel& panel) {
  // One chart per contiguous sweep.
  std::vector<Chart> charts;
  for (std::size_t i = 0; i < panel.rows.size();) {
    const std::size_t begin = i;
    const char sweep = panel.rows[i].sweep;
    const double fixed = sweep == 'x' ? panel.rows[i].u_star : panel.rows[i].x;
    while (i < panel.rows.size() && panel.rows[i].sweep == sweep &&
           (sweep == 'x' ? panel.rows[i].u_star : panel.rows[i].x) == fixed) {
      ++i;
    }
    Chart chart;
    chart.title = (sweep == 'x' ? "u* = " : "x = ") + GammaLabel(fixed);
    chart.x_label = sweep == 'x' ? "x" : "u*";
    Series fresh{"new bound", {}, {}};
    Series carlier{"proximal bound", {}, {}};
    Series exact{"L_phi", {}, {}};
    for (std::size_t k = begin; k < i; ++k) {
      const auto& r = panel.rows[k];
      const double t = sweep == 'x' ? r.x : r.u_star;
      fresh.x.push_back(t);
      fresh.y.push_back(r.new_bound);
      carlier.x.push_back(t);
      carlier.y.push_back(r.carlier_bound);
      exact.x.push_back(t);
      exact.y.push_back(r.exact_l);
    }
    chart.series = {std::move(fresh), std::move(carlier), std::move(exact)};
    charts.push_back(std::move(chart));
  }
  return RenderSvg(panel.title, charts);
}

}  // namespace haraux::cli
