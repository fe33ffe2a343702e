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
#include <queue>
#include <utility>
#include <vector>

#include "burstkit/burst.hpp"

namespace burstkit {

/// Time-ordered event queue. Events with equal timestamps pop in insertion
/// order, which keeps simulations reproducible across implementations.
template <class Payload>
class EventQueue {
 public:
  struct Entry {
    Nanos time;
    std::uint64_t seq;
    Payload payload;
  };

  void push(Nanos time, Payload payload) { heap_.push(Entry{time, next_seq_++, std::move(payload)}); }

  /// Precondition: !empty().
  Entry pop() {
    Entry e = std::move(const_cast<Entry&>(heap_.top()));
    heap_.pop();
    return e;
  }

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }
  Nanos next_time() const { return heap_.top().time; }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const noexcept {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace burstkit
