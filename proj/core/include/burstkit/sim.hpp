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

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "burstkit/burst.hpp"
#include "burstkit/generator.hpp"
#include "burstkit/metrics.hpp"
#include "burstkit/model.hpp"
#include "burstkit/rv.hpp"
#include "burstkit/trace.hpp"
#include "burstkit/wire.hpp"

namespace burstkit {

struct VrSource {
  VrStreamParams params;
  VrModelConstants constants;
};

struct SimpleSource {
  Variate size_bytes;
  Variate period_seconds;
};

struct TraceSource {
  std::shared_ptr<const TraceFile> trace;
  Nanos start_time{0};
};

using SourceSpec = std::variant<VrSource, SimpleSource, TraceSource>;

std::unique_ptr<BurstGenerator> make_generator(const SourceSpec& spec, RngStream rng);
/// Mean burst period of a source, in seconds.
double mean_period_seconds(const SourceSpec& spec);

enum class StartOffsets {
  kZero,    // every station starts at t = 0
  kRandom,  // uniform in [0, mean period) from a per-station stream
};

struct StationConfig {
  SourceSpec source;
  Nanos start_offset{0};  // added to the StartOffsets draw
};

/// N stations feeding one FIFO bottleneck link toward a burst sink.
struct ScenarioConfig {
  std::vector<StationConfig> stations;
  double link_rate_bps = 866e6;
  Nanos propagation_delay{0};
  std::uint32_t overhead_bytes = 0;  // per-fragment lower-layer overhead on the link
  double loss_prob = 0.0;            // independent per-fragment loss after serialization
  std::size_t queue_limit = 0;       // waiting fragments; 0 = unbounded, tail drop otherwise
  Nanos duration{std::chrono::seconds(10)};
  std::uint64_t seed = 1;
  std::size_t fragment_size = kDefaultFragmentSize;
  StartOffsets start_offsets = StartOffsets::kZero;

  /// n copies of one source.
  static ScenarioConfig uniform(std::size_t n_stations, const SourceSpec& source);

  /// Throws ConfigError on invalid settings.
  void validate() const;
};

/// Stream ids are fixed per station index so that adding a station leaves the
/// traffic of the others unchanged.
struct StreamIds {
  static constexpr std::uint64_t kLoss = 0;
  static constexpr std::uint64_t generator(std::size_t station) { return 1 + 2 * static_cast<std::uint64_t>(station); }
  static constexpr std::uint64_t start_offset(std::size_t station) {
    return 2 + 2 * static_cast<std::uint64_t>(station);
  }
};

/// Runs the event loop and returns the raw log. Stations stop generating at
/// `duration`; fragments already queued are delivered before the loop ends,
/// then every reassembler is flushed.
EventLog simulate(const ScenarioConfig& cfg);

/// simulate() followed by summarize().
MetricsReport run_scenario(const ScenarioConfig& cfg);

/// Serialization time of `bytes` on the link, rounded up to whole nanoseconds.
Nanos serialization_time(std::uint64_t bytes, double link_rate_bps);

}  // namespace burstkit
