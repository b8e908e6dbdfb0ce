/*
 * Copyright (c) 2026, The dmig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "dmig/estimation.hpp"

namespace {

struct Pair {
  dmig::SampleColumn x;
  dmig::SampleColumn y;
};

Pair correlated(std::size_t n, double rho)
{
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = normal(rng);
    y[i] = rho * x[i] + std::sqrt(1 - rho * rho) * normal(rng);
  }
  return {dmig::SampleColumn::continuous(std::move(x)), dmig::SampleColumn::continuous(std::move(y))};
}

void BM_KsgMutualInformation(benchmark::State& state)
{
  const auto p = correlated(static_cast<std::size_t>(state.range(0)), 0.8);
  const dmig::EstimatorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmig::mi_continuous(p.x, p.y, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KsgMutualInformation)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_KsgMixedDiscrete(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = correlated(n, 0.8);
  std::vector<double> codes(n);
  for (std::size_t i = 0; i < n; ++i) codes[i] = p.y.values()[i] > 0 ? 1.0 : 0.0;
  const auto d = dmig::SampleColumn::discrete(std::move(codes));
  const dmig::EstimatorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmig::mi_continuous(p.x, d, cfg));
}
BENCHMARK(BM_KsgMixedDiscrete)->Arg(1 << 12)->Arg(1 << 14);

void BM_KozachenkoLeonenko(benchmark::State& state)
{
  const auto p = correlated(static_cast<std::size_t>(state.range(0)), 0.0);
  const dmig::EstimatorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmig::entropy_continuous(p.x, cfg));
}
BENCHMARK(BM_KozachenkoLeonenko)->Arg(1 << 12)->Arg(1 << 16);

void BM_Spearman(benchmark::State& state)
{
  const auto p = correlated(static_cast<std::size_t>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(dmig::spearman(p.x, p.y));
}
BENCHMARK(BM_Spearman)->Arg(1 << 14);

}  // namespace
BENCHMARK_MAIN();
