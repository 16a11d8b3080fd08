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

// The self-verification suite behind `haraux verify`: randomized property
// checks for every module, each reported with its measured value and the
// threshold it must respect.

#ifndef HARAUX_CLI_VERIFY_H_
#define HARAUX_CLI_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace haraux::cli {

struct CheckRow {
  std::string module;
  std::string check;
  bool pass;
  double measured;
  double threshold;
  // Exception text when the check aborted.
  std::string note;
};

struct VerifyOptions {
  std::uint64_t seed;
  // Name of a check whose threshold is replaced by an unreachable one.
  std::string corrupt_check;
};

std::vector<CheckRow> RunVerifySuite(const VerifyOptions& options);

// Header: module,check,status,measured,threshold.
std::string VerifyCsv(const std::vector<CheckRow>& rows);

}  // namespace haraux::cli

#endif  // HARAUX_CLI_VERIFY_H_
