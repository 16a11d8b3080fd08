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

// Independent checks for the bounds: a brute-force lower approximation of
// the Haraux supremum over a sampled graph, and one-sided comparisons of a
// computed bound against an exact value or against that approximation.
//
// A finite sample of a supremum can only ever under-estimate it, so the
// oracle never certifies an upper bound on H_A, and it cannot recognize
// H_A = +inf.

#ifndef HARAUX_ORACLE_H_
#define HARAUX_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "haraux/bounds.h"
#include "haraux/core.h"
#include "haraux/operators.h"

namespace haraux {

inline constexpr std::uint64_t kDefaultSeed = 0x48415241;
// Distance kept from open domain ends by the default verification box.
inline constexpr double kVerificationShrink = 1e-6;
// Largest 1D grid reached by refinement.
inline constexpr std::size_t kMaxGridSize1d = (std::size_t{1} << 16) + 1;

struct GraphPoint {
  Vec y;
  Vec y_star;
};

struct GraphSample {
  std::vector<GraphPoint> points;
  std::string source;
  Box box;
  std::size_t n_per_dim = 0;
};

// Inclusive uniform grid with n_per_dim points per axis, each paired with
// its operator value. Grids of size n and 2n - 1 are nested exactly.
// Throws DomainError if a grid point lies outside the domain.
GraphSample SampleGraph(const MonotoneOperator& a, const Box& box,
                        std::size_t n_per_dim);

// `count` uniform random points of `box`, for dimensions where dense grids
// are out of reach. n_per_dim is 0 in the result.
GraphSample SampleGraphRandom(const MonotoneOperator& a, const Box& box,
                              std::size_t count, std::uint64_t seed);

// max over the sample of <x - y, y* - u*>.
double HarauxLowerApprox(const GraphSample& s, const DualPair& p);

// Operator domain intersected with [-10, 10]^N, kept kVerificationShrink
// away from finite open ends.
Box DefaultVerificationBox(const MonotoneOperator& a);
// 4096 points for N = 1, 257 for N = 2, 33 for N = 3.
std::size_t DefaultGridSize(std::size_t dim);
// Refinement cap: kMaxGridSize1d, 2049 for N = 2, 129 for N = 3.
std::size_t MaxGridSize(std::size_t dim);
// The next finer nested grid: 2n - 1.
std::size_t RefineGridSize(std::size_t n);

enum class Verdict { kPass, kFail, kConsistent, kInconclusive };

std::string VerdictName(Verdict v);

struct VerifyReport {
  Verdict verdict = Verdict::kFail;
  double bound = 0.0;
  // Exact value or the final sampled lower approximation.
  double reference = 0.0;
  double slack = 0.0;
  std::size_t n_per_dim = 0;
  int refinements = 0;
  std::string note;
};

// pass iff bound.value <= exact + slack.
VerifyReport VerifyBound(const BoundResult& bound, XReal exact, double slack);

struct GraphCheckOptions {
  Box box;  // DefaultVerificationBox when empty
  std::size_t n_per_dim = 0;  // DefaultGridSize when 0
  std::size_t max_n_per_dim = 0;  // MaxGridSize when 0
  bool escalate = true;
};

// "consistent" iff bound.value <= approx + slack. Otherwise the grid is
// refined up to max_n_per_dim; a bound that still exceeds the
// approximation is a failure when escalation ran, inconclusive when it was
// disabled.
VerifyReport VerifyBoundAgainstGraph(const BoundResult& bound,
                                     const MonotoneOperator& a,
                                     const DualPair& p, double slack,
                                     const GraphCheckOptions& options = {});

}  // namespace haraux

#endif  // HARAUX_ORACLE_H_
