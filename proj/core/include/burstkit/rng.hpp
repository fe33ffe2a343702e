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
#include <random>
#include <string_view>

namespace burstkit {

/// Reproducible random stream identified by (seed, stream_id).
///
/// Backed by std::mt19937_64 (19937-bit state), whose output sequence and
/// std::seed_seq initialization are both fully specified by the C++ standard,
/// so the same (seed, stream_id) gives the same bits on every conforming
/// platform. Uniform-to-real conversion and every variate transform are done
/// here rather than through <random> distributions, which are not portable.
///
/// Single owner: no concurrent draws on one stream. Moving is fine.
class RngStream {
 public:
  /// Identifier recorded in output metadata.
  static constexpr std::string_view kAlgorithmId = "mt19937_64/seed_seq(seed,stream_id)";

  explicit RngStream(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Normal variate via Box-Muller. Always consumes exactly two uniforms and
  /// never caches the second value, so the draw count per call is fixed.
  double normal(double mean, double stddev);

  /// True with probability p; consumes one uniform.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace burstkit
