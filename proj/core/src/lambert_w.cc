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

#include "haraux/lambert_w.h"

#include <cmath>
#include <limits>

#include "haraux/core.h"

namespace haraux {
namespace {

constexpr int kMaxHalleyIters = 64;

}  // namespace

double LambertW(double t) {
  if (std::isnan(t) || t < 0.0) {
    throw DomainError("LambertW: argument must be >= 0");
  }
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) throw DomainError("LambertW: argument is infinite");
  // Past ~1e300 exp(w) * w overflows during iteration; go through the log.
  if (t > 1e300) return LambertWOfExp(std::log(t));

  double w = std::log1p(t);
  for (int iter = 0; iter < kMaxHalleyIters; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - t;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                              (1.0 + std::abs(w))) {
      break;
    }
  }
  return w;
}

double LambertWOfExp(double y) {
  if (!std::isfinite(y)) throw DomainError("LambertWOfExp: non-finite input");
  if (y < 700.0) return LambertW(std::exp(y));
  // Newton on g(w) = w + log(w) - y, g'(w) = 1 + 1/w; w ~ y - log(y).
  double w = y - std::log(y);
  for (int iter = 0; iter < kMaxHalleyIters; ++iter) {
    const double step = (w + std::log(w) - y) / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * w) {
      break;
    }
  }
  return w;
}

}  // namespace haraux
