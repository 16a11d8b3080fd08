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

#include "haraux/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace haraux {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxSamplePoints = 50'000'000;

double GridPoint(const Interval& iv, std::size_t k, std::size_t n) {
  // Written so that grids of size n and 2n - 1 share their points bit for
  // bit: doubling k and n - 1 leaves the quotient unchanged.
  return iv.lo + ((iv.hi - iv.lo) * static_cast<double>(k)) /
                     static_cast<double>(n - 1);
}

GraphPoint Certify(const MonotoneOperator& a, Vec y) {
  if (!a.InDomain(y)) {
    throw DomainError("sample box leaves the domain of " + a.name());
  }
  Vec y_star = a.Apply(y);
  return {std::move(y), std::move(y_star)};
}

void CheckBox(const MonotoneOperator& a, const Box& box) {
  if (box.size() != a.dim()) {
    throw UsageError("sample box has the wrong dimension");
  }
  for (const auto& iv : box) {
    if (!iv.bounded() || !(iv.lo <= iv.hi)) {
      throw UsageError("sample box must be bounded");
    }
  }
}

}  // namespace

GraphSample SampleGraph(const MonotoneOperator& a, const Box& box,
                        std::size_t n_per_dim) {
  CheckBox(a, box);
  if (n_per_dim < 2) throw UsageError("SampleGraph: n_per_dim must be >= 2");
  const std::size_t dim = box.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > kMaxSamplePoints / n_per_dim) {
      throw UsageError("SampleGraph: grid too large; use random sampling");
    }
    total *= n_per_dim;
  }
  GraphSample s{.source = a.name(), .box = box, .n_per_dim = n_per_dim};
  s.points.reserve(total);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t count = 0; count < total; ++count) {
    s.points.push_back(Certify(a, Vec::Generate(dim, [&](std::size_t i) {
      return GridPoint(box[i], idx[i], n_per_dim);
    })));
    for (std::size_t i = 0; i < dim; ++i) {
      if (++idx[i] < n_per_dim) break;
      idx[i] = 0;
    }
  }
  return s;
}

GraphSample SampleGraphRandom(const MonotoneOperator& a, const Box& box,
                              std::size_t count, std::uint64_t seed) {
  CheckBox(a, box);
  if (count == 0) throw UsageError("SampleGraphRandom: count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GraphSample s{.source = a.name(), .box = box, .n_per_dim = 0};
  s.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    s.points.push_back(Certify(a, Vec::Generate(box.size(), [&](std::size_t i) {
      return box[i].lo + (box[i].hi - box[i].lo) * unit(rng);
    })));
  }
  return s;
}

double HarauxLowerApprox(const GraphSample& s, const DualPair& p) {
  if (s.points.empty()) throw UsageError("HarauxLowerApprox: empty sample");
  double best = -kInf;
  for (const auto& g : s.points) {
    best = std::max(best, Pairing(p.x() - g.y, g.y_star - p.u_star()));
  }
  return best;
}

Box DefaultVerificationBox(const MonotoneOperator& a) {
  Box box = a.Domain();
  for (auto& iv : box) {
    iv.lo = std::isfinite(iv.lo) ? std::max(iv.lo + kVerificationShrink, -10.0)
                                 : -10.0;
    iv.hi = std::isfinite(iv.hi) ? std::min(iv.hi - kVerificationShrink, 10.0)
                                 : 10.0;
  }
  return box;
}

std::size_t DefaultGridSize(std::size_t dim) {
  switch (dim) {
    case 1:
      return 4096;
    case 2:
      return 257;
    case 3:
      return 33;
    default:
      throw UsageError("dense grids are limited to N <= 3");
  }
}

std::size_t MaxGridSize(std::size_t dim) {
  switch (dim) {
    case 1:
      return kMaxGridSize1d;
    case 2:
      return 2049;
    case 3:
      return 129;
    default:
      throw UsageError("dense grids are limited to N <= 3");
  }
}

std::size_t RefineGridSize(std::size_t n) { return 2 * n - 1; }

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kConsistent:
      return "consistent";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

VerifyReport VerifyBound(const BoundResult& bound, XReal exact, double slack) {
  VerifyReport r;
  r.bound = bound.value;
  r.reference = exact.value();
  r.slack = slack;
  if (!bound.usable) {
    r.verdict = Verdict::kFail;
    r.note = "bound unusable: auxiliary point left the domain";
    return r;
  }
  r.verdict = XReal(bound.value) <= exact + XReal(slack) ? Verdict::kPass
                                                         : Verdict::kFail;
  return r;
}

VerifyReport VerifyBoundAgainstGraph(const BoundResult& bound,
                                     const MonotoneOperator& a,
                                     const DualPair& p, double slack,
                                     const GraphCheckOptions& options) {
  const Box box = options.box.empty() ? DefaultVerificationBox(a) : options.box;
  std::size_t n =
      options.n_per_dim ? options.n_per_dim : DefaultGridSize(a.dim());
  const std::size_t cap = options.max_n_per_dim ? options.max_n_per_dim
                                                : MaxGridSize(a.dim());
  VerifyReport r;
  r.bound = bound.value;
  r.slack = slack;
  r.note = "sampled supremum is a lower approximation; +inf not detectable";
  if (!bound.usable) {
    r.verdict = Verdict::kFail;
    r.note = "bound unusable: auxiliary point left the domain";
    return r;
  }
  for (;;) {
    r.n_per_dim = n;
    r.reference = HarauxLowerApprox(SampleGraph(a, box, n), p);
    if (bound.value <= r.reference + slack) {
      r.verdict = Verdict::kConsistent;
      return r;
    }
    const std::size_t next = RefineGridSize(n);
    if (!options.escalate || next > cap) break;
    n = next;
    ++r.refinements;
  }
  r.verdict = options.escalate ? Verdict::kFail : Verdict::kInconclusive;
  return r;
}

}  // namespace haraux
