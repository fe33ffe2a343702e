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

#include "burstkit/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string_view>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_uint(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  if (field.empty()) throw ParseError(std::string("empty ") + what, line);
  if (field.front() == '-') throw ParseError(std::string("negative ") + what + " '" + std::string(field) + "'", line);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec == std::errc::result_out_of_range) throw ParseError(std::string(what) + " out of range", line);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string("non-integer ") + what + " '" + std::string(field) + "'", line);
  }
  return v;
}

Nanos parse_period(std::string_view field, PeriodUnit unit, std::size_t line) {
  if (unit == PeriodUnit::kMicroseconds) {
    const auto us = parse_uint(field, line, "next period");
    if (us > static_cast<std::uint64_t>(Nanos::max().count() / 1000)) throw ParseError("next period out of range", line);
    return Nanos{static_cast<Nanos::rep>(us) * 1000};
  }
  field = trim(field);
  if (!field.empty() && field.front() == '-') throw ParseError("negative next period", line);
  double seconds = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), seconds);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(seconds)) {
    throw ParseError("invalid next period '" + std::string(field) + "'", line);
  }
  return seconds_to_nanos(seconds);
}

}  // namespace

Nanos TraceFile::duration() const {
  return std::accumulate(records.begin(), records.end(), Nanos{0},
                         [](Nanos acc, const BurstDescriptor& r) { return acc + r.next_period; });
}

TraceFile parse_trace(std::istream& in, PeriodUnit unit) {
  TraceFile trace;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      const auto body = line.substr(1);
      const auto colon = body.find(':');
      if (colon != std::string_view::npos) {
        const auto key = trim(body.substr(0, colon));
        if (!key.empty()) trace.metadata[std::string(key)] = std::string(trim(body.substr(colon + 1)));
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected 'burst_size,next_period'", line_no);
    }
    BurstDescriptor rec;
    rec.burst_size = parse_uint(line.substr(0, comma), line_no, "burst size");
    rec.next_period = parse_period(line.substr(comma + 1), unit, line_no);
    if (rec.burst_size == 0) throw ParseError("burst size must be positive", line_no);
    if (rec.next_period <= Nanos{0}) throw ParseError("next period must be positive", line_no);
    trace.records.push_back(rec);
  }
  if (trace.records.empty()) throw ParseError("trace has no data rows");
  return trace;
}

TraceFile load_trace(const std::string& path, PeriodUnit unit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  return parse_trace(in, unit);
}

void write_trace(std::ostream& out, const TraceFile& trace) {
  for (const auto& [key, value] : trace.metadata) out << "# " << key << ": " << value << '\n';
  for (const auto& r : trace.records) {
    const auto us = (r.next_period.count() + 500) / 1000;
    if (us <= 0) throw ParameterError("next period below 1 us cannot be written to a trace file");
    out << r.burst_size << ',' << us << '\n';
  }
}

}  // namespace burstkit
