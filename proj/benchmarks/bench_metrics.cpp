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

#include "dmig/metrics.hpp"
#include "dmig/synthetic.hpp"

namespace {

void BM_EvaluateGaussianPair(benchmark::State& state)
{
  dmig::synthetic::SyntheticSpec spec;
  spec.family = dmig::synthetic::Family::gaussian_pair;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.rho = 0.9;
  spec.d_total = 4;
  const auto sample = dmig::synthetic::gen_gaussian_pair(spec);
  const dmig::EstimatorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmig::evaluate(sample.dataset, cfg, 1));
}
BENCHMARK(BM_EvaluateGaussianPair)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_EvaluateDiscreteJoint(benchmark::State& state)
{
  dmig::synthetic::SyntheticSpec spec;
  spec.family = dmig::synthetic::Family::discrete_joint;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.pmf = {{0.4, 0.1}, {0.1, 0.4}};
  const auto sample = dmig::synthetic::gen_discrete_joint(spec);
  const dmig::EstimatorConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(dmig::evaluate(sample.dataset, cfg, 1));
}
BENCHMARK(BM_EvaluateDiscreteJoint)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
