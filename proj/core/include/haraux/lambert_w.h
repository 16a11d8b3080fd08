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

#ifndef HARAUX_LAMBERT_W_H_
#define HARAUX_LAMBERT_W_H_

namespace haraux {

// Principal branch W0 on [0, +inf): the w >= 0 with w * exp(w) = t.
// Halley iteration started from log(1 + t). Throws DomainError for t < 0.
double LambertW(double t);

// W0(exp(y)) for any real y, without forming exp(y). Solves
// w + log(w) = y, which keeps large arguments (y > 709) usable.
double LambertWOfExp(double y);

}  // namespace haraux

#endif  // HARAUX_LAMBERT_W_H_
