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

#include "burstkit/reassembler.hpp"
#include "burstkit/wire.hpp"

namespace {

using namespace burstkit;

void BM_EncodeHeader(benchmark::State& state) {
  FragmentHeader h{7, 3, 90, 104166, 123456789};
  for (auto _ : state) {
    ++h.burst_seq;
    benchmark::DoNotOptimize(encode_header(h));
  }
}
BENCHMARK(BM_EncodeHeader);

void BM_DecodeHeader(benchmark::State& state) {
  const auto bytes = encode_header(FragmentHeader{7, 3, 90, 104166, 123456789});
  for (auto _ : state) benchmark::DoNotOptimize(decode_header(bytes));
}
BENCHMARK(BM_DecodeHeader);

void BM_FragmentBurst(benchmark::State& state) {
  const auto size = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fragment_burst(1, size, 0));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_FragmentBurst)->Arg(3000)->Arg(104166);

// Whole VR-sized bursts through one reassembler.
void BM_Reassemble(benchmark::State& state) {
  std::vector<Fragment> frags;
  for (std::uint32_t b = 0; b < 64; ++b) {
    const auto f = fragment_burst(b, 104166, 0);
    frags.insert(frags.end(), f.begin(), f.end());
  }
  for (auto _ : state) {
    BurstReassembler r;
    for (const auto& f : frags) benchmark::DoNotOptimize(r.on_fragment(f.header, Nanos{1}, f.payload_len));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * frags.size()));
}
BENCHMARK(BM_Reassemble);

}  // namespace
