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

#include "burstkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {

std::size_t nearest_rank_index(std::size_t n, double p) {
  if (n == 0) throw ParameterError("percentile of an empty sample set");
  if (!(p > 0.0 && p <= 100.0)) throw ParameterError("percentile must be in (0, 100], got " + std::to_string(p));
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) / 100.0));
  return std::clamp<std::size_t>(rank, 1, n) - 1;
}

template <class T>
T percentile_impl(std::span<const T> samples, double p) {
  const auto idx = nearest_rank_index(samples.size(), p);
  std::vector<T> sorted(samples.begin(), samples.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
  return sorted[idx];
}

void fill_level(LevelReport& r, const EventLog::StationCounts& c, const std::vector<std::int64_t>& frag_delays,
                const std::vector<std::int64_t>& burst_delays, std::uint64_t bytes, std::uint64_t discarded,
                Nanos duration) {
  r.fragment.sent = c.fragments_sent;
  r.fragment.dropped_queue = c.fragments_dropped_queue;
  r.fragment.lost_channel = c.fragments_lost_channel;
  r.fragment.delay = summarize_delays(frag_delays);
  r.burst.count = c.bursts_sent;
  r.burst.received = burst_delays.size();
  r.burst.failed = c.bursts_sent >= r.burst.received ? c.bursts_sent - r.burst.received : 0;
  r.burst.discarded = discarded;
  r.burst.delay = summarize_delays(burst_delays);
  if (c.bursts_sent > 0) {
    r.burst.success_ratio = static_cast<double>(r.burst.received) / static_cast<double>(c.bursts_sent);
  }
  r.payload_bytes_received = bytes;
  r.throughput_bps = duration > Nanos{0} ? static_cast<double>(bytes) * 8.0 / to_seconds(duration) : 0.0;
}

}  // namespace

double percentile(std::span<const double> samples, double p) { return percentile_impl(samples, p); }

std::int64_t percentile(std::span<const std::int64_t> samples, double p) { return percentile_impl(samples, p); }

DelaySummary summarize_delays(std::span<const std::int64_t> delays_ns) {
  DelaySummary s;
  s.count = delays_ns.size();
  if (delays_ns.empty()) return s;
  double sum = 0.0;
  for (auto d : delays_ns) sum += static_cast<double>(d);
  s.mean_ns = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (auto d : delays_ns) ss += (static_cast<double>(d) - s.mean_ns) * (static_cast<double>(d) - s.mean_ns);
    s.std_ns = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  s.p95_ns = percentile(delays_ns, 95.0);
  s.max_ns = *std::max_element(delays_ns.begin(), delays_ns.end());
  return s;
}

MetricsReport summarize(const EventLog& log) {
  const auto n = log.stations.size();
  std::vector<std::vector<std::int64_t>> frag_delays(n), burst_delays(n);
  std::vector<std::uint64_t> bytes(n, 0), discarded(n, 0);
  std::vector<std::int64_t> all_frag, all_burst;
  all_frag.reserve(log.fragments.size());

  for (const auto& f : log.fragments) {
    if (f.station >= n) throw ParameterError("event log references unknown station " + std::to_string(f.station));
    frag_delays[f.station].push_back(f.delay.count());
    all_frag.push_back(f.delay.count());
    bytes[f.station] += f.payload_len;
  }
  for (const auto& b : log.bursts) {
    if (b.station >= n) throw ParameterError("event log references unknown station " + std::to_string(b.station));
    if (b.received) {
      burst_delays[b.station].push_back(b.delay.count());
      all_burst.push_back(b.delay.count());
    } else {
      ++discarded[b.station];
    }
  }

  MetricsReport report;
  EventLog::StationCounts total;
  std::uint64_t total_bytes = 0, total_discarded = 0;
  for (std::size_t i = 0; i < n; ++i) {
    StationReport st;
    st.station = static_cast<std::uint32_t>(i);
    fill_level(st, log.stations[i], frag_delays[i], burst_delays[i], bytes[i], discarded[i], log.duration);
    report.per_station.push_back(std::move(st));
    total.bursts_sent += log.stations[i].bursts_sent;
    total.fragments_sent += log.stations[i].fragments_sent;
    total.fragments_dropped_queue += log.stations[i].fragments_dropped_queue;
    total.fragments_lost_channel += log.stations[i].fragments_lost_channel;
    total_bytes += bytes[i];
    total_discarded += discarded[i];
  }
  fill_level(report, total, all_frag, all_burst, total_bytes, total_discarded, log.duration);
  report.duration = log.duration;
  report.end_time = log.end_time;
  report.link_busy = log.link_busy;
  report.link_served_bytes = log.link_served_bytes;
  return report;
}

}  // namespace burstkit
