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

// A minimal SVG line-chart writer: one or more side-by-side charts, each
// with axes, tick labels, polylines and a legend.

#ifndef HARAUX_CLI_SVG_H_
#define HARAUX_CLI_SVG_H_

#include <string>
#include <vector>

namespace haraux::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::vector<Series> series;
};

// Non-finite points are skipped.
std::string RenderSvg(const std::string& title,
                      const std::vector<Chart>& charts);

}  // namespace haraux::cli

#endif  // HARAUX_CLI_SVG_H_
