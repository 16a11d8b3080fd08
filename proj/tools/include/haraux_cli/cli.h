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

// The haraux command-line front end: configuration, name parsing and the
// five commands. main() only wires CLI11 flags into a RunConfig.

#ifndef HARAUX_CLI_CLI_H_
#define HARAUX_CLI_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "haraux/core.h"
#include "haraux/functions.h"
#include "haraux/operators.h"

namespace haraux::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

struct RunConfig {
  std::string command;  // bound | sweep | verify | figure1 | gauge
  std::string phi;
  std::string f;
  std::string op_a;
  std::string op_w;
  std::vector<std::string> methods;
  std::vector<double> gammas;
  std::vector<std::string> points;
  std::string grid;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  // gauge
  std::string op_c;
  std::string op_dinv;
  std::string op_wx;
  std::string op_wy;
  std::string matrix;
  // verify self-test: forces the named check to fail.
  std::string corrupt_check;
};

// "x1,x2;u1,u2". Throws UsageError.
DualPair ParsePoint(const std::string& text);

// "lo:hi:n" or a single value, once for x and once for u*, separated by
// ';'. Returns the points of the product grid, x varying slowest.
std::vector<DualPair> ParseGrid(const std::string& text);

// Whitespace-separated rows.
Matrix ReadMatrixFile(const std::string& path);

// grad:<fn> | subdiff:<fn> | affine:<file> | joca16:<beta>,<psi> |
// skew:<file> | identity. `dim` sizes the separable variants.
MonotoneOperator ParseOperator(const std::string& text, std::size_t dim);

// Flag value, else $HARAUX_SEED, else the default seed.
std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag);

// Runs one command. Data goes to `out` unless cfg.out names a file (a
// directory for figure1); messages go to `err`.
int RunCommand(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace haraux::cli

#endif  // HARAUX_CLI_CLI_H_
