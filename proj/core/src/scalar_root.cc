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

#include "haraux/scalar_root.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <sstream>
#include <string>

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBisectionSteps = 80;
constexpr int kNewtonSteps = 8;
constexpr double kFarAway = 1e300;
// Closest approach to a finite domain end. Points nearer than the smallest
// normal double are treated as boundary points by the function catalog.
constexpr double kMinGap = 2.0 * std::numeric_limits<double>::min();

class Evaluator {
 public:
  Evaluator(const MonotoneEquation& eq, const SolveConfig& cfg)
      : eq_(eq), cfg_(cfg) {}

  double operator()(double t) {
    if (++count_ > cfg_.max_iter) {
      throw ConvergenceError("SolveMonotone: exceeded max_iter=" +
                             std::to_string(cfg_.max_iter));
    }
    const double g = eq_.residual(t);
    if (std::isnan(g)) {
      std::ostringstream msg;
      msg << "SolveMonotone: residual is NaN at t=" << t;
      throw ConvergenceError(msg.str());
    }
    return g;
  }

  bool has_budget() const { return count_ < cfg_.max_iter; }
  int count() const { return count_; }

 private:
  const MonotoneEquation& eq_;
  const SolveConfig& cfg_;
  int count_ = 0;
};

double PickStart(const MonotoneEquation& eq, double lo, double hi) {
  double t = eq.start;
  if (std::isfinite(t) && t > lo && t < hi) return t;
  if (std::isfinite(lo) && std::isfinite(hi)) return lo + 0.5 * (hi - lo);
  if (std::isfinite(lo)) return lo + 1.0;
  if (std::isfinite(hi)) return hi - 1.0;
  return 0.0;
}

// Walks from t0 toward `limit` until the residual has sign
// `want_negative ? <= 0 : >= 0`. Returns the first such point and updates
// `inner`/`inner_g` with the last point that failed the test. Steps grow
// (or gaps to a finite limit shrink) doubly exponentially, so roots near
// 1e300 or within a few ulps of an open boundary are bracketed in about ten
// evaluations. A finite limit itself is never evaluated.
double Expand(Evaluator& eval, double t0, double limit, bool want_negative,
              double expand, double& inner, double& inner_g) {
  const double direction = want_negative ? -1.0 : 1.0;
  const double h = std::max(1.0, std::abs(t0));
  double factor = 1.0;
  double shrink = 1.0 / expand;
  double growth = expand;
  for (;;) {
    double t;
    if (std::isfinite(limit)) {
      factor *= shrink;
      shrink *= shrink;
      const double gap = std::abs(t0 - limit) * factor;
      t = limit - direction * gap;
      if (gap < kMinGap || t == limit) {
        // Skipping ahead can jump past the last representable interior
        // point, so try that point before giving up.
        t = limit - direction * kMinGap;
        if (t == limit) t = std::nextafter(limit, -direction * kInf);
        if (t == inner) {
          std::ostringstream msg;
          msg << "SolveMonotone: residual keeps its sign up to the domain "
                 "boundary (t="
              << inner << ", residual=" << inner_g << ")";
          throw NoSolutionError(msg.str());
        }
      }
    } else {
      t = t0 + direction * h * factor;
      factor *= growth;
      growth *= growth;
      if (std::abs(t) > kFarAway) {
        throw NoSolutionError("SolveMonotone: no sign change before " +
                              std::string(want_negative ? "-inf" : "+inf"));
      }
    }
    const double g = eval(t);
    if (want_negative ? g <= 0.0 : g >= 0.0) return t;
    inner = t;
    inner_g = g;
  }
}

// Midpoint of [a, b]; geometric in the distance to a finite domain end when
// the bracket spans several orders of magnitude of that distance.
double Midpoint(double a, double b, const Interval& domain) {
  if (std::isfinite(domain.lo)) {
    const double da = a - domain.lo, db = b - domain.lo;
    if (da > 0.0 && db > 8.0 * da) {
      return domain.lo + std::sqrt(da) * std::sqrt(db);
    }
  }
  if (std::isfinite(domain.hi)) {
    const double da = domain.hi - a, db = domain.hi - b;
    if (db > 0.0 && da > 8.0 * db) {
      return domain.hi - std::sqrt(da) * std::sqrt(db);
    }
  }
  if (a > 0.0 && b > 8.0 * a) return std::sqrt(a) * std::sqrt(b);
  if (b < 0.0 && a < 8.0 * b) return -std::sqrt(-a) * std::sqrt(-b);
  return a + 0.5 * (b - a);
}

}  // namespace

void SolveConfig::Validate() const {
  if (!(atol > 0.0)) throw UsageError("SolveConfig: atol must be > 0");
  if (max_iter < 1) throw UsageError("SolveConfig: max_iter must be >= 1");
  if (!(bracket_expand > 1.0)) {
    throw UsageError("SolveConfig: bracket_expand must be > 1");
  }
}

ScalarRoot SolveMonotone(const MonotoneEquation& eq, const SolveConfig& cfg) {
  cfg.Validate();
  const double lo = eq.domain.lo;
  const double hi = eq.domain.hi;
  if (!(lo < hi)) throw NoSolutionError("SolveMonotone: empty domain");

  Evaluator eval(eq, cfg);
  const double tol = cfg.atol * eq.scale;
  const double t0 = PickStart(eq, lo, hi);
  const double g0 = eval(t0);
  if (g0 == 0.0) return {t0, 0.0, eval.count()};

  // Bracket [a, b] with residual(a) <= 0 <= residual(b).
  double a, b, ga, gb;
  if (g0 > 0.0) {
    b = t0;
    gb = g0;
    a = Expand(eval, t0, lo, /*want_negative=*/true, cfg.bracket_expand, b,
               gb);
    ga = eq.residual(a);
  } else {
    a = t0;
    ga = g0;
    b = Expand(eval, t0, hi, /*want_negative=*/false, cfg.bracket_expand, a,
               ga);
    gb = eq.residual(b);
  }
  if (ga == 0.0) return {a, 0.0, eval.count()};
  if (gb == 0.0) return {b, 0.0, eval.count()};

  for (int k = 0; k < kBisectionSteps; ++k) {
    const double m = Midpoint(a, b, eq.domain);
    if (!(m > a && m < b)) break;
    const double gm = eval(m);
    if (gm == 0.0) return {m, 0.0, eval.count()};
    if (gm < 0.0) {
      a = m;
      ga = gm;
    } else {
      b = m;
      gb = gm;
    }
  }

  double t = std::abs(ga) <= std::abs(gb) ? a : b;
  double g = std::abs(ga) <= std::abs(gb) ? ga : gb;
  if (eq.slope) {
    for (int k = 0; k < kNewtonSteps && g != 0.0 && eval.has_budget(); ++k) {
      const double d = eq.slope(t);
      if (!(d > 0.0) || !std::isfinite(d)) break;
      const double tn = t - g / d;
      if (!(tn >= a && tn <= b) || tn == t) break;
      const double gn = eval(tn);
      if (!(std::abs(gn) < std::abs(g))) break;
      t = tn;
      g = gn;
    }
  }

  const bool collapsed =
      std::nextafter(std::nextafter(a, b), b) >= b;
  if (!(std::abs(g) <= tol)) {
    std::ostringstream msg;
    msg << "SolveMonotone: residual " << g << " exceeds tolerance " << tol
        << " at t=" << std::setprecision(17) << t;
    if (collapsed) {
      msg << "; the root lies between the neighbouring doubles " << a
          << " and " << b << ", so the tolerance is out of reach";
    }
    throw ConvergenceError(msg.str());
  }
  return {t, g, eval.count()};
}

}  // namespace haraux
