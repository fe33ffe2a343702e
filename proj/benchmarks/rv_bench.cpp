/* Copyright 2026 The burstkit Authors
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
 *
 */

#include <benchmark/benchmark.h>

#include "burstkit/model.hpp"
#include "burstkit/rng.hpp"
#include "burstkit/rv.hpp"

namespace {

using namespace burstkit;

void BM_Uniform(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.uniform());
}
BENCHMARK(BM_Uniform);

void BM_Normal(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal(0.0, 1.0));
}
BENCHMARK(BM_Normal);

void BM_LogisticSample(benchmark::State& state) {
  RngStream rng(1, 0);
  const LogisticParams p{1.0 / 60, 0.00076};
  for (auto _ : state) benchmark::DoNotOptimize(logistic_sample(p, rng));
}
BENCHMARK(BM_LogisticSample);

void BM_Gmm2Draw(benchmark::State& state) {
  RngStream rng(1, 0);
  const auto p = derive_frame_size_model(VrStreamParams{}, VrModelConstants{});
  for (auto _ : state) benchmark::DoNotOptimize(gmm2_draw(p, rng));
}
BENCHMARK(BM_Gmm2Draw);

void BM_VrFrame(benchmark::State& state) {
  RngStream rng(1, 0);
  const auto p = derive_frame_size_model(VrStreamParams{}, VrModelConstants{});
  for (auto _ : state) benchmark::DoNotOptimize(sample_vr_frame(p, rng));
}
BENCHMARK(BM_VrFrame);

void BM_EmpiricalSample(benchmark::State& state) {
  RngStream rng(1, 0);
  std::vector<EmpiricalCdf::Point> pts;
  const auto n = state.range(0);
  for (int i = 1; i <= n; ++i) pts.push_back({static_cast<double>(i), static_cast<double>(i) / static_cast<double>(n)});
  const EmpiricalCdf cdf(pts);
  for (auto _ : state) benchmark::DoNotOptimize(cdf.sample(rng));
}
BENCHMARK(BM_EmpiricalSample)->Arg(8)->Arg(1024);

}  // namespace
