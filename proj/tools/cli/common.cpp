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

#include "cli/common.hpp"

#include <charconv>
#include <system_error>

#include "burstkit/error.hpp"
#include "burstkit/model.hpp"

namespace burstkit::cli {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

PeriodUnit parse_period_unit(const std::string& text) {
  if (text == "us") return PeriodUnit::kMicroseconds;
  if (text == "s") return PeriodUnit::kSeconds;
  throw ParameterError("period unit must be 'us' or 's', got '" + text + "'");
}

ResolvedSource resolve_source(const SourceOptions& opt, bool allow_trace) {
  ResolvedSource r;
  r.meta.emplace_back("model", opt.model);
  r.flags = "--model " + opt.model;
  if (opt.model == "vr") {
    VrStreamParams params{opt.rate_mbps * 1e6, opt.fps};
    params.validate();
    VrModelConstants k;
    if (!opt.params.empty()) k = load_constants(opt.params);
    r.meta.emplace_back("target_rate_mbps", fmt(opt.rate_mbps));
    r.meta.emplace_back("fps", fmt(opt.fps));
    r.meta.emplace_back("mean_frame_size_bytes", fmt(params.mean_frame_size()));
    r.meta.emplace_back("params", opt.params.empty() ? "default" : opt.params);
    r.meta.emplace_back("c", fmt(k.c));
    r.meta.emplace_back("s_I", fmt(k.s_I));
    r.meta.emplace_back("s_P", fmt(k.s_P));
    r.meta.emplace_back("a_I", fmt(k.a_I));
    r.meta.emplace_back("b_I", fmt(k.b_I));
    r.meta.emplace_back("a_P", fmt(k.a_P));
    r.meta.emplace_back("b_P", fmt(k.b_P));
    r.flags += " --rate-mbps " + fmt(opt.rate_mbps) + " --fps " + fmt(opt.fps);
    if (!opt.params.empty()) r.flags += " --params " + opt.params;
    r.spec = VrSource{params, k};
  } else if (opt.model == "simple") {
    if (opt.size_dist.empty() || opt.period_dist.empty()) {
      throw ParameterError("the simple model needs --size-dist and --period-dist");
    }
    auto size = parse_variate(opt.size_dist);
    auto period = parse_variate(opt.period_dist);
    r.meta.emplace_back("size_dist", to_string(size));
    r.meta.emplace_back("period_dist", to_string(period));
    r.flags += " --size-dist " + to_string(size) + " --period-dist " + to_string(period);
    r.spec = SimpleSource{std::move(size), std::move(period)};
  } else if (opt.model == "trace" && allow_trace) {
    if (opt.trace.empty()) throw ParameterError("the trace model needs --trace");
    if (opt.start_time_s < 0.0) throw ParameterError("start time must be non-negative");
    auto trace = std::make_shared<const TraceFile>(load_trace(opt.trace, parse_period_unit(opt.period_unit)));
    r.meta.emplace_back("trace", opt.trace);
    r.meta.emplace_back("start_time_s", fmt(opt.start_time_s));
    r.meta.emplace_back("period_unit", opt.period_unit);
    for (const auto& [k, v] : trace->metadata) r.meta.emplace_back("trace." + k, v);
    r.flags += " --trace " + opt.trace + " --start-time " + fmt(opt.start_time_s) + " --period-unit " + opt.period_unit;
    r.spec = TraceSource{std::move(trace), seconds_to_nanos(opt.start_time_s)};
  } else {
    throw ParameterError("unknown model '" + opt.model + "'" + (allow_trace ? "" : " (use vr or simple)"));
  }
  return r;
}

Output::Output(const std::string& path, std::ostream& fallback) : path_(path), os_(&fallback) {
  if (path.empty() || path == "-") return;
  file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file_) throw IoError("cannot open '" + path + "' for writing");
  os_ = file_.get();
}

void Output::finish() {
  os_->flush();
  if (!*os_) throw IoError("write failed on '" + (file_ ? path_ : std::string("stdout")) + "'");
  if (file_) {
    file_->close();
    if (!*file_) throw IoError("cannot close '" + path_ + "'");
  }
}

}  // namespace burstkit::cli
