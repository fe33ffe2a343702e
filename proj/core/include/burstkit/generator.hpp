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
#include <memory>

#include "burstkit/burst.hpp"
#include "burstkit/model.hpp"
#include "burstkit/rng.hpp"
#include "burstkit/rv.hpp"
#include "burstkit/trace.hpp"

namespace burstkit {

/// Source of (burst size, next period) pairs driving a bursty sender.
///
/// Callers check has_next_burst() before each generate_burst(); calling
/// generate_burst() on an exhausted generator throws ExhaustedError.
/// Instances are single-owner.
class BurstGenerator {
 public:
  virtual ~BurstGenerator() = default;

  virtual bool has_next_burst() const = 0;
  virtual BurstDescriptor generate_burst() = 0;
};

/// Burst size (bytes) and next period (seconds) drawn from two independent
/// variates, size first. Sizes round to the nearest byte and are at least 1;
/// negative periods clamp to 0.
class SimpleBurstGenerator final : public BurstGenerator {
 public:
  SimpleBurstGenerator(Variate size_bytes, Variate period_seconds, RngStream rng);

  bool has_next_burst() const override { return true; }
  BurstDescriptor generate_burst() override;

 private:
  Variate size_;
  Variate period_;
  RngStream rng_;
};

/// The VR traffic model: Gaussian-mixture frame sizes and logistic inter-frame
/// intervals parameterized by target rate and frame rate.
class VrBurstGenerator final : public BurstGenerator {
 public:
  VrBurstGenerator(VrStreamParams params, VrModelConstants constants, RngStream rng);

  bool has_next_burst() const override { return true; }
  BurstDescriptor generate_burst() override;

  const VrStreamParams& params() const noexcept { return params_; }
  const Gmm2Params& frame_model() const noexcept { return frame_model_; }
  const LogisticParams& ifi_model() const noexcept { return ifi_model_; }

 private:
  VrStreamParams params_;
  Gmm2Params frame_model_;
  LogisticParams ifi_model_;
  RngStream rng_;
};

/// Replays a trace row by row.
class TraceFileBurstGenerator final : public BurstGenerator {
 public:
  explicit TraceFileBurstGenerator(std::shared_ptr<const TraceFile> trace, Nanos start_time = Nanos{0});

  bool has_next_burst() const override { return cursor_ < trace_->records.size(); }
  BurstDescriptor generate_burst() override;

  /// Restarts replay at the first record whose start time (sum of the
  /// preceding periods) is >= t0. Bursts are never split, so records that
  /// start before t0 are skipped whole. A t0 at or past the trace duration
  /// leaves the generator exhausted.
  void seek_start_time(Nanos t0);

  std::size_t cursor() const noexcept { return cursor_; }
  const TraceFile& trace() const noexcept { return *trace_; }

 private:
  std::shared_ptr<const TraceFile> trace_;
  std::size_t cursor_ = 0;
};

}  // namespace burstkit
