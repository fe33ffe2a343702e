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

#include "burstkit/report_json.hpp"

namespace burstkit {

namespace {

template <class T>
nlohmann::ordered_json opt(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

void add_delay(nlohmann::ordered_json& o, const DelaySummary& d) {
  o["mean_delay_ns"] = d.count ? nlohmann::ordered_json(d.mean_ns) : nlohmann::ordered_json(nullptr);
  o["std_delay_ns"] = d.count > 1 ? nlohmann::ordered_json(d.std_ns) : nlohmann::ordered_json(nullptr);
  o["p95_delay_ns"] = opt(d.p95_ns);
  o["max_delay_ns"] = opt(d.max_ns);
}

nlohmann::ordered_json level_json(const LevelReport& r) {
  nlohmann::ordered_json frag;
  frag["count"] = r.fragment.delay.count;
  frag["sent"] = r.fragment.sent;
  frag["dropped_queue"] = r.fragment.dropped_queue;
  frag["lost_channel"] = r.fragment.lost_channel;
  add_delay(frag, r.fragment.delay);

  nlohmann::ordered_json burst;
  burst["count"] = r.burst.count;
  burst["received"] = r.burst.received;
  burst["failed"] = r.burst.failed;
  burst["discarded"] = r.burst.discarded;
  add_delay(burst, r.burst.delay);
  burst["success_ratio"] = opt(r.burst.success_ratio);

  nlohmann::ordered_json o;
  o["fragment"] = std::move(frag);
  o["burst"] = std::move(burst);
  o["payload_bytes_received"] = r.payload_bytes_received;
  o["throughput_bps"] = r.throughput_bps;
  return o;
}

}  // namespace

nlohmann::ordered_json to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  auto& meta = j["meta"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.metadata) meta[k] = v;
  const auto levels = level_json(report);
  for (auto& [k, v] : levels.items()) j[k] = v;
  j["link"] = {{"busy_ns", report.link_busy.count()},
               {"served_bytes", report.link_served_bytes},
               {"end_time_ns", report.end_time.count()},
               {"duration_ns", report.duration.count()}};
  auto& stations = j["per_station"] = nlohmann::ordered_json::array();
  for (const auto& st : report.per_station) {
    nlohmann::ordered_json o;
    o["station"] = st.station;
    const auto levels = level_json(st);
    for (auto& [k, v] : levels.items()) o[k] = v;
    stations.push_back(std::move(o));
  }
  return j;
}

}  // namespace burstkit
