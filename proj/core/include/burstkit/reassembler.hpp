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
#include <optional>
#include <vector>

#include "burstkit/burst.hpp"
#include "burstkit/wire.hpp"

namespace burstkit {

struct BurstReceived {
  std::uint32_t burst_seq;
  std::uint64_t burst_size;
  std::uint64_t payload_bytes;  // sum of the distinct fragments' payloads
  std::uint16_t frag_count;
  Nanos delay;                  // completing arrival minus sender timestamp
};

struct BurstDiscarded {
  std::uint32_t burst_seq;
  std::uint16_t fragments_received;
  std::uint16_t frag_count;
  std::uint64_t burst_size;  // as announced by the headers
};

enum class FragmentDisposition {
  kAccepted,   // new fragment of the current burst
  kDuplicate,  // index already held for the current burst
  kLate,       // belongs to a burst older than the current one
  kMismatch,   // invalid header, or frag_count disagrees with the burst's first fragment
};

/// Outcome of one fragment arrival. A single arrival can both discard the
/// previous incomplete burst and complete a new single-fragment burst.
struct FragmentResult {
  FragmentDisposition disposition;
  std::optional<BurstDiscarded> discarded;
  std::optional<BurstReceived> received;
};

struct ReassemblyCounters {
  std::uint64_t fragments_received = 0;  // every arrival, duplicates and late ones included
  std::uint64_t bytes_received = 0;      // payload bytes of every arrival
  std::uint64_t bursts_started = 0;
  std::uint64_t bursts_received = 0;
  std::uint64_t bursts_failed = 0;
  std::uint64_t duplicate_fragments = 0;
  std::uint64_t late_fragments = 0;
};

/// Best-effort per-flow burst reassembly.
///
/// Only one burst is collected at a time. Fragments of the current burst are
/// accepted in any order and the burst completes once every index has been
/// seen. A fragment of a newer burst abandons the current one (reported as
/// discarded if it was incomplete); fragments of older bursts are ignored.
/// Sequence numbers are compared without wrap-around.
class BurstReassembler {
 public:
  FragmentResult on_fragment(const FragmentHeader& h, Nanos arrival_time, std::uint32_t payload_len);

  /// Ends the flow: an incomplete current burst is reported as discarded.
  std::optional<BurstDiscarded> flush();

  const ReassemblyCounters& counters() const noexcept { return counters_; }
  std::optional<std::uint32_t> current_burst() const noexcept {
    return active_ ? std::optional<std::uint32_t>(current_seq_) : std::nullopt;
  }

 private:
  void start(const FragmentHeader& h);

  ReassemblyCounters counters_;
  bool active_ = false;
  bool complete_ = false;
  std::uint32_t current_seq_ = 0;
  std::uint16_t frag_count_ = 0;
  std::uint16_t have_count_ = 0;
  std::uint64_t burst_size_ = 0;
  std::uint64_t payload_bytes_ = 0;
  std::vector<bool> have_;
};

}  // namespace burstkit
