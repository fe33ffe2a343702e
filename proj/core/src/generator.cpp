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

#include "burstkit/generator.hpp"

#include <cmath>
#include <utility>

#include "burstkit/error.hpp"

namespace burstkit {

SimpleBurstGenerator::SimpleBurstGenerator(Variate size_bytes, Variate period_seconds, RngStream rng)
    : size_(std::move(size_bytes)), period_(std::move(period_seconds)), rng_(std::move(rng)) {}

BurstDescriptor SimpleBurstGenerator::generate_burst() {
  const double size = std::round(sample(size_, rng_));
  const double period = sample(period_, rng_);
  BurstDescriptor b;
  b.burst_size = size < 1.0 ? 1 : static_cast<std::uint64_t>(size);
  b.next_period = period > 0.0 ? seconds_to_nanos(period) : Nanos{0};
  return b;
}

VrBurstGenerator::VrBurstGenerator(VrStreamParams params, VrModelConstants constants, RngStream rng)
    : params_(params),
      frame_model_(derive_frame_size_model(params, constants)),
      ifi_model_(derive_ifi_model(params, constants)),
      rng_(std::move(rng)) {}

BurstDescriptor VrBurstGenerator::generate_burst() {
  BurstDescriptor b;
  b.burst_size = sample_vr_frame(frame_model_, rng_);
  b.next_period = seconds_to_nanos(sample_vr_ifi(ifi_model_, rng_));
  return b;
}

TraceFileBurstGenerator::TraceFileBurstGenerator(std::shared_ptr<const TraceFile> trace, Nanos start_time)
    : trace_(std::move(trace)) {
  if (!trace_) throw ParameterError("trace generator needs a trace");
  seek_start_time(start_time);
}

BurstDescriptor TraceFileBurstGenerator::generate_burst() {
  if (!has_next_burst()) throw ExhaustedError("trace generator has no bursts left");
  return trace_->records[cursor_++];
}

void TraceFileBurstGenerator::seek_start_time(Nanos t0) {
  if (t0 < Nanos{0}) throw ParameterError("start time must be non-negative");
  const auto& recs = trace_->records;
  Nanos start{0};
  cursor_ = 0;
  while (cursor_ < recs.size() && start < t0) {
    start += recs[cursor_].next_period;
    ++cursor_;
  }
}

}  // namespace burstkit
