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

#include "burstkit/sim.hpp"

namespace {

using namespace burstkit;

// One simulated second of N VR stations at 50 Mbps / 60 FPS.
void BM_RunScenario(benchmark::State& state) {
  auto cfg = ScenarioConfig::uniform(static_cast<std::size_t>(state.range(0)), VrSource{});
  cfg.duration = std::chrono::seconds(1);
  cfg.start_offsets = StartOffsets::kRandom;
  std::size_t fragments = 0;
  for (auto _ : state) {
    const auto log = simulate(cfg);
    fragments += log.fragments.size();
    benchmark::DoNotOptimize(log.link_busy);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(fragments));
}
BENCHMARK(BM_RunScenario)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
