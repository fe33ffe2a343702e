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

#include <nlohmann/json.hpp>

#include "burstkit/metrics.hpp"

namespace burstkit {

/// Metrics report as JSON:
///   {meta{...}, fragment{count, sent, ..., mean_delay_ns, p95_delay_ns},
///    burst{count, received, failed, ..., success_ratio}, throughput_bps, link{...},
///    per_station[...]}
/// Missing percentiles (no samples) and undefined ratios serialize as null.
nlohmann::ordered_json to_json(const MetricsReport& report);

}  // namespace burstkit
