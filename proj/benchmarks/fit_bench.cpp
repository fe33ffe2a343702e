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

#include "burstkit/fit.hpp"

namespace {

using namespace burstkit;

void BM_EmSingleRestart(benchmark::State& state) {
  RngStream data(1, 0);
  const auto p = derive_frame_size_model(VrStreamParams{}, VrModelConstants{});
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (auto& x : xs) x = gmm2_sample(p, data);
  EmOptions opt;
  opt.restarts = 1;
  int iterations = 0;
  for (auto _ : state) {
    RngStream rng(2, 0);
    const auto fit = fit_gmm2_em(xs, rng, opt);
    iterations += fit.n_iterations;
    benchmark::DoNotOptimize(fit.log_likelihood);
  }
  // One item is one sample visited by one EM iteration.
  state.SetItemsProcessed(static_cast<std::int64_t>(iterations) * state.range(0));
}
BENCHMARK(BM_EmSingleRestart)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Gmm2LogLikelihood(benchmark::State& state) {
  RngStream data(1, 0);
  const auto p = derive_frame_size_model(VrStreamParams{}, VrModelConstants{});
  std::vector<double> xs(100000);
  for (auto& x : xs) x = gmm2_sample(p, data);
  for (auto _ : state) benchmark::DoNotOptimize(gmm2_log_likelihood(xs, p));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * xs.size()));
}
BENCHMARK(BM_Gmm2LogLikelihood);

}  // namespace
