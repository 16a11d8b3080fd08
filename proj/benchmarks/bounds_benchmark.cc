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

#include <cmath>

#include "benchmark/benchmark.h"
#include "haraux/bounds.h"
#include "haraux/functions.h"
#include "haraux/lambert_w.h"
#include "haraux/oracle.h"
#include "haraux/solvers.h"

namespace haraux {
namespace {

void BM_LambertW(benchmark::State& state) {
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(LambertW(t));
    t = t < 1e6 ? t * 1.7 : 0.5;
  }
}
BENCHMARK(BM_LambertW);

void BM_ProxBurg(benchmark::State& state) {
  const SeparableFunction burg(Burg(), static_cast<std::size_t>(state.range(0)));
  const Vec x = Vec::Constant(burg.dim(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(Prox(burg, 0.7, x));
}
BENCHMARK(BM_ProxBurg)->Arg(1)->Arg(16)->Arg(256);

void BM_BoundBregmanBurg(benchmark::State& state) {
  const SeparableFunction burg(Burg(), 1);
  const auto a = MonotoneOperator::Subdifferential(burg);
  const DualPair p(Vec{1.3}, Vec{-2.1});
  SolveConfig cfg;
  cfg.prefer_closed_form = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BoundBregman(burg, a, p, 0.5, cfg).value);
  }
}
BENCHMARK(BM_BoundBregmanBurg)->Arg(0)->Arg(1);

void BM_BoundBregmanFermiDirac(benchmark::State& state) {
  const SeparableFunction fd(FermiDirac(), 1);
  const auto a =
      MonotoneOperator::Subdifferential(SeparableFunction(BoltzmannShannon(), 1));
  const DualPair p(Vec{0.3}, Vec{0.7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(BoundBregman(fd, a, p, 2.0).value);
  }
}
BENCHMARK(BM_BoundBregmanFermiDirac);

void BM_BoundPairingJoca16(benchmark::State& state) {
  const auto a = MonotoneOperator::Joca16(0.5, Softplus());
  const auto id = MonotoneOperator::Identity(2);
  const DualPair p(Vec{1, 2}, Vec{-1, 0.5});
  const double gamma = state.range(0) == 0 ? 1.0 : 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(BoundPairing(id, a, p, gamma).value);
  }
}
BENCHMARK(BM_BoundPairingJoca16)->Arg(0)->Arg(1);

void BM_HarauxLowerApprox(benchmark::State& state) {
  const auto a = MonotoneOperator::Subdifferential(SeparableFunction(Burg(), 1));
  const GraphSample s =
      SampleGraph(a, DefaultVerificationBox(a), static_cast<std::size_t>(state.range(0)));
  const DualPair p(Vec{1}, Vec{-2});
  for (auto _ : state) benchmark::DoNotOptimize(HarauxLowerApprox(s, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_HarauxLowerApprox)->Arg(4096)->Arg(65537);

}  // namespace
}  // namespace haraux

BENCHMARK_MAIN();
