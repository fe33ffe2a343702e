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

#include "burstkit/reassembler.hpp"

namespace burstkit {

void BurstReassembler::start(const FragmentHeader& h) {
  active_ = true;
  complete_ = false;
  current_seq_ = h.burst_seq;
  frag_count_ = h.frag_count;
  have_count_ = 0;
  burst_size_ = h.burst_size;
  payload_bytes_ = 0;
  have_.assign(h.frag_count, false);
  ++counters_.bursts_started;
}

std::optional<BurstDiscarded> BurstReassembler::flush() {
  if (!active_ || complete_ || have_count_ == 0) return std::nullopt;
  ++counters_.bursts_failed;
  complete_ = true;  // nothing further to report for this burst
  return BurstDiscarded{current_seq_, have_count_, frag_count_, burst_size_};
}

FragmentResult BurstReassembler::on_fragment(const FragmentHeader& h, Nanos arrival_time, std::uint32_t payload_len) {
  ++counters_.fragments_received;
  counters_.bytes_received += payload_len;

  FragmentResult result{FragmentDisposition::kAccepted, std::nullopt, std::nullopt};

  if (!h.valid()) {
    result.disposition = FragmentDisposition::kMismatch;
    return result;
  }
  if (active_ && h.burst_seq < current_seq_) {
    ++counters_.late_fragments;
    result.disposition = FragmentDisposition::kLate;
    return result;
  }
  if (!active_ || h.burst_seq > current_seq_) {
    if (active_) result.discarded = flush();
    start(h);
  } else if (h.frag_count != frag_count_ || h.frag_index >= frag_count_) {
    result.disposition = FragmentDisposition::kMismatch;
    return result;
  }

  if (have_[h.frag_index]) {
    ++counters_.duplicate_fragments;
    result.disposition = FragmentDisposition::kDuplicate;
    return result;
  }
  have_[h.frag_index] = true;
  ++have_count_;
  payload_bytes_ += payload_len;

  if (have_count_ == frag_count_) {
    complete_ = true;
    ++counters_.bursts_received;
    result.received = BurstReceived{current_seq_, burst_size_, payload_bytes_, frag_count_,
                                    arrival_time - Nanos{static_cast<Nanos::rep>(h.timestamp_ns)}};
  }
  return result;
}

}  // namespace burstkit
