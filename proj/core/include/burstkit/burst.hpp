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

#include <chrono>
#include <cstdint>

namespace burstkit {

using Nanos = std::chrono::nanoseconds;

/// One generated burst: its size and the delay until the next burst starts.
struct BurstDescriptor {
  std::uint64_t burst_size = 1;  // bytes, >= 1
  Nanos next_period{0};          // >= 0

  friend bool operator==(const BurstDescriptor&, const BurstDescriptor&) = default;
};

/// Converts seconds to whole nanoseconds (rounded to nearest).
inline Nanos seconds_to_nanos(double seconds) {
  return Nanos{static_cast<Nanos::rep>(seconds * 1e9 + (seconds >= 0 ? 0.5 : -0.5))};
}

inline double to_seconds(Nanos ns) { return static_cast<double>(ns.count()) * 1e-9; }

}  // namespace burstkit
