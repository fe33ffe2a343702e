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

#include "burstkit/wire.hpp"

#include <limits>
#include <string>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {

template <class T>
void put_be(std::span<std::byte> out, std::size_t offset, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out[offset + i] = static_cast<std::byte>((value >> (8 * (sizeof(T) - 1 - i))) & 0xFF);
  }
}

template <class T>
T get_be(std::span<const std::byte> in, std::size_t offset) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value = static_cast<T>((value << 8) | static_cast<T>(std::to_integer<std::uint8_t>(in[offset + i])));
  }
  return value;
}

std::size_t payload_capacity(std::size_t fragment_size) {
  if (fragment_size <= FragmentHeader::kEncodedSize) {
    throw ConfigError("fragment size must exceed the " + std::to_string(FragmentHeader::kEncodedSize) +
                      " B header, got " + std::to_string(fragment_size));
  }
  return fragment_size - FragmentHeader::kEncodedSize;
}

}  // namespace

void encode_header(const FragmentHeader& h, std::span<std::byte> out) {
  if (out.size() < FragmentHeader::kEncodedSize) throw DecodeError("header buffer too short");
  put_be(out, 0, h.burst_seq);
  put_be(out, 4, h.frag_index);
  put_be(out, 6, h.frag_count);
  put_be(out, 8, h.burst_size);
  put_be(out, 16, h.timestamp_ns);
}

EncodedHeader encode_header(const FragmentHeader& h) {
  EncodedHeader out{};
  encode_header(h, out);
  return out;
}

FragmentHeader decode_header(std::span<const std::byte> bytes) {
  if (bytes.size() < FragmentHeader::kEncodedSize) {
    throw DecodeError("need " + std::to_string(FragmentHeader::kEncodedSize) + " bytes for a fragment header, got " +
                      std::to_string(bytes.size()));
  }
  FragmentHeader h;
  h.burst_seq = get_be<std::uint32_t>(bytes, 0);
  h.frag_index = get_be<std::uint16_t>(bytes, 4);
  h.frag_count = get_be<std::uint16_t>(bytes, 6);
  h.burst_size = get_be<std::uint64_t>(bytes, 8);
  h.timestamp_ns = get_be<std::uint64_t>(bytes, 16);
  if (!h.valid()) {
    throw DecodeError("fragment index " + std::to_string(h.frag_index) + " not below fragment count " +
                      std::to_string(h.frag_count));
  }
  return h;
}

std::size_t fragment_count(std::uint64_t burst_size, std::size_t fragment_size) {
  const auto cap = payload_capacity(fragment_size);
  return static_cast<std::size_t>((burst_size + cap - 1) / cap);
}

std::vector<Fragment> fragment_burst(std::uint32_t burst_seq, std::uint64_t burst_size, std::uint64_t timestamp_ns,
                                     std::size_t fragment_size) {
  if (burst_size == 0) throw ParameterError("burst size must be at least 1 byte");
  const auto cap = payload_capacity(fragment_size);
  const auto count = fragment_count(burst_size, fragment_size);
  if (count > std::numeric_limits<std::uint16_t>::max()) {
    throw ConfigError("burst of " + std::to_string(burst_size) + " B needs " + std::to_string(count) +
                      " fragments; at most 65535 fit the header");
  }
  std::vector<Fragment> out;
  out.reserve(count);
  std::uint64_t remaining = burst_size;
  for (std::size_t i = 0; i < count; ++i) {
    Fragment f;
    f.header.burst_seq = burst_seq;
    f.header.frag_index = static_cast<std::uint16_t>(i);
    f.header.frag_count = static_cast<std::uint16_t>(count);
    f.header.burst_size = burst_size;
    f.header.timestamp_ns = timestamp_ns;
    f.payload_len = static_cast<std::uint32_t>(remaining < cap ? remaining : cap);
    remaining -= f.payload_len;
    out.push_back(f);
  }
  return out;
}

}  // namespace burstkit
