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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace burstkit {

/// Per-fragment header carried in front of every fragment payload.
///
/// Wire layout, big-endian, 24 bytes:
///
///   offset  size  field
///        0     4  burst_seq
///        4     2  frag_index
///        6     2  frag_count
///        8     8  burst_size    (bytes)
///       16     8  timestamp     (sender clock, ns)
struct FragmentHeader {
  static constexpr std::size_t kEncodedSize = 24;

  std::uint32_t burst_seq = 0;
  std::uint16_t frag_index = 0;
  std::uint16_t frag_count = 1;
  std::uint64_t burst_size = 0;
  std::uint64_t timestamp_ns = 0;

  bool valid() const noexcept { return frag_count >= 1 && frag_index < frag_count; }

  friend bool operator==(const FragmentHeader&, const FragmentHeader&) = default;
};

using EncodedHeader = std::array<std::byte, FragmentHeader::kEncodedSize>;

EncodedHeader encode_header(const FragmentHeader& h);
/// Writes the header into the first 24 bytes of out; throws DecodeError if out is shorter.
void encode_header(const FragmentHeader& h, std::span<std::byte> out);
/// Reads the first 24 bytes. Throws DecodeError on a short buffer or when
/// frag_index >= frag_count.
FragmentHeader decode_header(std::span<const std::byte> bytes);

struct Fragment {
  FragmentHeader header;
  std::uint32_t payload_len = 0;

  /// Header plus payload, i.e. the datagram size.
  std::size_t wire_size() const noexcept { return FragmentHeader::kEncodedSize + payload_len; }
};

/// Default fragment (datagram payload) size, header included.
inline constexpr std::size_t kDefaultFragmentSize = 1278;

/// Splits a burst into fragments of at most fragment_size bytes including the
/// header. Every fragment but the last carries fragment_size - 24 payload
/// bytes; the last carries the remainder.
///
/// Throws ConfigError if fragment_size <= 24 or the burst would need more
/// than 65535 fragments; ParameterError if burst_size is 0.
std::vector<Fragment> fragment_burst(std::uint32_t burst_seq, std::uint64_t burst_size, std::uint64_t timestamp_ns,
                                     std::size_t fragment_size = kDefaultFragmentSize);

/// Number of fragments fragment_burst() would produce.
std::size_t fragment_count(std::uint64_t burst_size, std::size_t fragment_size);

}  // namespace burstkit
