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

#include "haraux_cli/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace haraux::cli {
namespace {

constexpr double kChartWidth = 420.0;
constexpr double kChartHeight = 300.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginTop = 56.0;
constexpr double kMarginBottom = 48.0;
constexpr double kGap = 40.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Settle() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo <= 0.0) {
      const double pad = std::max(1.0, std::abs(lo)) * 0.5;
      lo -= pad;
      hi += pad;
    }
  }
};

void RenderChart(std::ostringstream& out, const Chart& chart, double ox) {
  Range rx, ry;
  for (const auto& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        rx.Add(s.x[i]);
        ry.Add(s.y[i]);
      }
    }
  }
  rx.Settle();
  ry.Settle();
  const double x0 = ox + kMarginLeft;
  const double y0 = kMarginTop;
  auto px = [&](double v) {
    return x0 + (v - rx.lo) / (rx.hi - rx.lo) * kChartWidth;
  };
  auto py = [&](double v) {
    return y0 + kChartHeight - (v - ry.lo) / (ry.hi - ry.lo) * kChartHeight;
  };

  out << "<g>\n";
  out << "<text x=\"" << Num(x0 + kChartWidth / 2) << "\" y=\""
      << Num(y0 - 24) << "\" text-anchor=\"middle\" font-size=\"14\">"
      << Escape(chart.title) << "</text>\n";
  out << "<rect x=\"" << Num(x0) << "\" y=\"" << Num(y0) << "\" width=\""
      << Num(kChartWidth) << "\" height=\"" << Num(kChartHeight)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double vx = rx.lo + (rx.hi - rx.lo) * k / 4.0;
    const double vy = ry.lo + (ry.hi - ry.lo) * k / 4.0;
    out << "<text x=\"" << Num(px(vx)) << "\" y=\""
        << Num(y0 + kChartHeight + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << Tick(vx)
        << "</text>\n";
    out << "<text x=\"" << Num(x0 - 6) << "\" y=\"" << Num(py(vy) + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << Tick(vy)
        << "</text>\n";
  }
  out << "<text x=\"" << Num(x0 + kChartWidth / 2) << "\" y=\""
      << Num(y0 + kChartHeight + 36)
      << "\" text-anchor=\"middle\" font-size=\"12\">"
      << Escape(chart.x_label) << "</text>\n";

  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const Series& s = chart.series[si];
    const char* color = kColors[si % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out << ' ';
      out << Num(px(s.x[i])) << ',' << Num(py(s.y[i]));
      first = false;
    }
    out << "\"/>\n";
    const double ly = y0 + 14 + 16 * static_cast<double>(si);
    out << "<line x1=\"" << Num(x0 + 10) << "\" y1=\"" << Num(ly - 4)
        << "\" x2=\"" << Num(x0 + 30) << "\" y2=\"" << Num(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << Num(x0 + 36) << "\" y=\"" << Num(ly)
        << "\" font-size=\"11\">" << Escape(s.name) << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

std::string RenderSvg(const std::string& title,
                      const std::vector<Chart>& charts) {
  const double per_chart = kMarginLeft + kChartWidth + kGap;
  const double width = per_chart * std::max<std::size_t>(1, charts.size());
  const double height = kMarginTop + kChartHeight + kMarginBottom + 8;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width)
      << "\" height=\"" << Num(height) << "\" viewBox=\"0 0 " << Num(width)
      << ' ' << Num(height) << "\">\n";
  out << "<title>" << Escape(title) << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < charts.size(); ++i) {
    RenderChart(out, charts[i], per_chart * static_cast<double>(i));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace haraux::cli
