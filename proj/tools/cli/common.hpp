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
#include <fstream>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "burstkit/sim.hpp"
#include "burstkit/trace.hpp"

namespace burstkit::cli {

struct SourceOptions {
  std::string model = "vr";
  double rate_mbps = 50.0;
  double fps = 60.0;
  std::string params;  // constants JSON
  std::string size_dist;
  std::string period_dist;
  std::string trace;
  double start_time_s = 0.0;
  std::string period_unit = "us";
};

struct GenerateOptions {
  SourceOptions source;
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  std::string out = "-";
};

struct ReplayOptions {
  std::string trace;
  double start_time_s = 0.0;
  double duration_s = 0.0;  // 0 = until the end of the trace
  std::string period_unit = "us";
  std::string out = "-";
};

struct SimulateOptions {
  SourceOptions source;
  std::string stations = "1";
  double link_mbps = 866.0;
  double prop_delay_us = 0.0;
  std::uint32_t overhead_bytes = 0;
  double loss = 0.0;
  std::size_t queue_limit = 0;
  std::size_t fragment_size = kDefaultFragmentSize;
  double duration_s = 10.0;
  std::uint64_t seed = 1;
  std::string start_offsets = "zero";
  double start_time_step_s = 0.0;  // trace sources: extra start time per station index
  std::string out = "-";
};

struct FitCliOptions {
  std::vector<std::string> traces;
  std::uint64_t seed = 1;
  int restarts = 50;
  int max_iter = 500;
  double tol = 1e-8;
  bool uniform_weights = false;
  std::string period_unit = "us";
  std::string out = "-";
};

struct StatsOptions {
  std::string trace;
  std::string period_unit = "us";
  std::string out = "-";
};

struct SendOptions {
  SourceOptions source;
  std::string dest;
  double duration_s = 10.0;
  std::uint64_t count = 0;  // 0 = no burst limit
  std::uint64_t seed = 1;
  std::size_t fragment_size = kDefaultFragmentSize;
  std::string pacing = "wall";
  std::string out = "-";
};

struct RecvOptions {
  std::string listen;
  double idle_timeout_s = 2.0;
  double duration_s = 0.0;      // 0 = until idle
  std::uint64_t max_bursts = 0;  // 0 = no limit
  std::string out = "-";
};

/// Ordered key/value pairs echoed at the top of every output.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal form that reads back to the same double.
std::string fmt(double v);
std::string fmt(std::uint64_t v);

PeriodUnit parse_period_unit(const std::string& text);

struct ResolvedSource {
  SourceSpec spec;
  Metadata meta;
  std::string flags;  // canonical command-line flags reproducing the source
};

/// Builds a source from the model flags. `allow_trace` is false for generate.
ResolvedSource resolve_source(const SourceOptions& opt, bool allow_trace);

/// "-" selects the fallback stream; anything else is opened as a file.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback);
  std::ostream& stream() { return *os_; }
  /// Flushes and throws IoError if any write failed.
  void finish();

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

}  // namespace burstkit::cli
