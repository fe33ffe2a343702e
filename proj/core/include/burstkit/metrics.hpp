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

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "burstkit/burst.hpp"

namespace burstkit {

/// Nearest-rank percentile: the sorted sample at 1-based rank ceil(p*n/100).
/// Throws ParameterError on empty input or p outside (0, 100].
double percentile(std::span<const double> samples, double p);
std::int64_t percentile(std::span<const std::int64_t> samples, double p);

struct DelaySummary {
  std::uint64_t count = 0;
  double mean_ns = 0.0;
  double std_ns = 0.0;  // sample std (n-1); 0 for fewer than two samples
  std::optional<std::int64_t> p95_ns;
  std::optional<std::int64_t> max_ns;
};

DelaySummary summarize_delays(std::span<const std::int64_t> delays_ns);

struct FragmentLevel {
  std::uint64_t sent = 0;
  std::uint64_t dropped_queue = 0;  // tail drops at the link
  std::uint64_t lost_channel = 0;   // Bernoulli losses
  DelaySummary delay;               // delay.count == fragments received
};

struct BurstLevel {
  std::uint64_t count = 0;      // bursts generated
  std::uint64_t received = 0;   // fully reassembled
  std::uint64_t failed = 0;     // count - received
  std::uint64_t discarded = 0;  // reported discarded by the reassembler (subset of failed)
  DelaySummary delay;           // over received bursts only
  std::optional<double> success_ratio;
};

struct LevelReport {
  FragmentLevel fragment;
  BurstLevel burst;
  std::uint64_t payload_bytes_received = 0;
  double throughput_bps = 0.0;
};

struct StationReport : LevelReport {
  std::uint32_t station = 0;
};

struct MetricsReport : LevelReport {
  std::vector<StationReport> per_station;
  Nanos duration{0};
  Nanos end_time{0};   // time of the last processed event
  Nanos link_busy{0};  // total serialization time
  std::uint64_t link_served_bytes = 0;
  std::map<std::string, std::string> metadata;
};

/// Raw event log of one run, everything needed to compute a MetricsReport.
struct EventLog {
  struct FragmentArrival {
    std::uint32_t station;
    std::uint32_t burst_seq;
    Nanos delay;  // arrival - burst timestamp
    std::uint32_t payload_len;
  };
  struct BurstOutcome {
    std::uint32_t station;
    std::uint32_t burst_seq;
    bool received;
    Nanos delay;  // meaningful when received: last fragment arrival - burst timestamp
  };
  struct StationCounts {
    std::uint64_t bursts_sent = 0;
    std::uint64_t fragments_sent = 0;
    std::uint64_t fragments_dropped_queue = 0;
    std::uint64_t fragments_lost_channel = 0;
  };

  std::vector<StationCounts> stations;
  std::vector<FragmentArrival> fragments;
  std::vector<BurstOutcome> bursts;
  Nanos duration{0};
  Nanos end_time{0};
  Nanos link_busy{0};
  std::uint64_t link_served_bytes = 0;
};

/// Aggregates a run's event log; throughput is measured over log.duration.
MetricsReport summarize(const EventLog& log);

}  // namespace burstkit
