// Copyright 2026 The Fixpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Normality tests on random dense matrices scaled to rho = 0.9.

#include <benchmark/benchmark.h>

#include <random>

#include "fixpoint/nonneg_matrix.hpp"

namespace {

fixpoint::NonnegativeMatrix random_normal(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  fixpoint::Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  const fixpoint::NonnegativeMatrix raw(m);
  const double rho = fixpoint::spectral_radius(raw, 1e-12).rho;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) *= 0.9 / rho;
  return fixpoint::NonnegativeMatrix(m);
}

void BM_MatkowskiElimination(benchmark::State& state) {
  const auto a = random_normal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixpoint::is_normal_matkowski(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MatkowskiElimination)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_LeadingMinors(benchmark::State& state) {
  const auto a = random_normal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixpoint::leading_minors(a));
}
BENCHMARK(BM_LeadingMinors)->RangeMultiplier(2)->Range(2, 64);

void BM_Certificate(benchmark::State& state) {
  const auto a = random_normal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixpoint::normality_certificate(a));
}
BENCHMARK(BM_Certificate)->RangeMultiplier(2)->Range(2, 64);

void BM_SpectralRadius(benchmark::State& state) {
  const auto a = random_normal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixpoint::spectral_radius(a, 1e-10));
}
BENCHMARK(BM_SpectralRadius)->RangeMultiplier(2)->Range(2, 32);

void BM_NeumannInverse(benchmark::State& state) {
  const auto a = random_normal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fixpoint::neumann_inverse(a, 1e-10));
}
BENCHMARK(BM_NeumannInverse)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
