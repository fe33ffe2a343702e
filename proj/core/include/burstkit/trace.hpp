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

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "burstkit/burst.hpp"

namespace burstkit {

/// A replayable (burst size, next period) sequence plus free-form metadata.
///
/// On-disk format, one record per line (LF or CRLF):
///
///   # key: value            metadata (any '#' line; lines without ':' are comments)
///   <burst_size_bytes>,<next_period_us>
///
/// Both fields are unsigned decimal integers; sizes and periods must be
/// positive so cumulative time strictly increases.
struct TraceFile {
  std::vector<BurstDescriptor> records;
  std::map<std::string, std::string> metadata;

  /// Sum of all next periods.
  Nanos duration() const;
};

/// Unit of the second column. Seconds accepts fractional decimal values and
/// exists to convert third-party traces; files we write always use microseconds.
enum class PeriodUnit { kMicroseconds, kSeconds };

/// Throws ParseError (with the offending 1-based line) on malformed rows or
/// when no data rows are present.
TraceFile parse_trace(std::istream& in, PeriodUnit unit = PeriodUnit::kMicroseconds);
TraceFile load_trace(const std::string& path, PeriodUnit unit = PeriodUnit::kMicroseconds);

/// Writes metadata lines (in key order) followed by the rows. Periods are
/// rounded to the nearest microsecond; a period that rounds to zero throws
/// ParameterError since it could not be read back.
void write_trace(std::ostream& out, const TraceFile& trace);

}  // namespace burstkit
