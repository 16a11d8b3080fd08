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

// CSV field formatting shared by every command.

#ifndef HARAUX_CLI_CSV_H_
#define HARAUX_CLI_CSV_H_

#include <string>
#include <vector>

#include "haraux/core.h"

namespace haraux::cli {

// 17 significant digits, so every double survives a round trip. Infinite
// values print as "inf".
std::string FormatDouble(double v);

// Coordinates joined by ';'.
std::string FormatVec(const Vec& v);

// Joins fields with ','. Fields are never quoted; callers keep commas out.
std::string CsvLine(const std::vector<std::string>& fields);

}  // namespace haraux::cli

#endif  // HARAUX_CLI_CSV_H_
