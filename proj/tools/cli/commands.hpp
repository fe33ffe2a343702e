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

#include "cli/common.hpp"

namespace burstkit::cli {

// Each command writes its result to opt.out (or `out`) and returns an exit
// code; library errors propagate as exceptions and are mapped by run().
int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_replay(const ReplayOptions& opt, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fit(const FitCliOptions& opt, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_send(const SendOptions& opt, std::ostream& out, std::ostream& err);
int cmd_recv(const RecvOptions& opt, std::ostream& out, std::ostream& err);

/// Parses "N", "A..B" or a comma-separated list of those.
std::vector<std::size_t> parse_station_counts(const std::string& text);

}  // namespace burstkit::cli
