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

#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <ostream>

#include <nlohmann/json.hpp>

#include "burstkit/error.hpp"
#include "burstkit/fit.hpp"
#include "burstkit/generator.hpp"
#include "burstkit/metrics.hpp"
#include "burstkit/report_json.hpp"

namespace burstkit::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolName = "burstkit";

json meta_json(const Metadata& meta) {
  json j = json::object();
  for (const auto& [k, v] : meta) j[k] = v;
  return j;
}

std::size_t parse_count(const std::string& s, const std::string& whole) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v == 0) {
    throw ParameterError("bad station count '" + whole + "'");
  }
  return v;
}

// Summary of a sample set for stats output.
json describe(std::vector<double> xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  json j;
  j["mean"] = mean;
  j["std"] = xs.size() > 1 ? json(std::sqrt(ss / (n - 1.0))) : json(nullptr);
  j["min"] = *std::min_element(xs.begin(), xs.end());
  j["max"] = *std::max_element(xs.begin(), xs.end());
  j["p95"] = percentile(xs, 95.0);
  return j;
}

}  // namespace

std::vector<std::size_t> parse_station_counts(const std::string& text) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const auto item = text.substr(pos, comma - pos);
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_count(item, text));
    } else {
      const auto lo = parse_count(item.substr(0, dots), text);
      const auto hi = parse_count(item.substr(dots + 2), text);
      if (hi < lo) throw ParameterError("empty station range '" + text + "'");
      for (auto n = lo; n <= hi; ++n) out.push_back(n);
    }
    pos = comma + 1;
  }
  return out;
}

int cmd_generate(const GenerateOptions& opt, std::ostream& out, std::ostream&) {
  const auto src = resolve_source(opt.source, false);
  if (!(opt.duration_s > 0.0)) throw InsufficientDataError("duration must be positive: nothing to generate");
  const auto stream = StreamIds::generator(0);
  auto gen = make_generator(src.spec, RngStream(opt.seed, stream));

  TraceFile trace;
  const Nanos duration = seconds_to_nanos(opt.duration_s);
  Nanos t{0};
  while (t < duration && gen->has_next_burst()) {
    auto b = gen->generate_burst();
    // Store what the file can represent so that replay matches exactly.
    const auto us = (b.next_period.count() + 500) / 1000;
    if (us <= 0) throw ParameterError("generated period rounds to 0 us; the trace format cannot hold it");
    b.next_period = std::chrono::microseconds(us);
    trace.records.push_back(b);
    t += b.next_period;
  }
  if (trace.records.empty()) throw InsufficientDataError("no bursts generated");

  trace.metadata["generator"] = std::string(kToolName) + " generate";
  trace.metadata["command"] = std::string(kToolName) + " generate " + src.flags + " --duration-s " +
                              fmt(opt.duration_s) + " --seed " + fmt(opt.seed);
  trace.metadata["seed"] = fmt(opt.seed);
  trace.metadata["stream_id"] = fmt(stream);
  trace.metadata["rng_algorithm"] = std::string(RngStream::kAlgorithmId);
  trace.metadata["duration_s"] = fmt(opt.duration_s);
  trace.metadata["period_unit"] = "us";
  for (const auto& [k, v] : src.meta) trace.metadata[k] = v;

  Output o(opt.out, out);
  write_trace(o.stream(), trace);
  o.finish();
  return 0;
}

int cmd_replay(const ReplayOptions& opt, std::ostream& out, std::ostream&) {
  if (opt.start_time_s < 0.0) throw ParameterError("start time must be non-negative");
  if (opt.duration_s < 0.0) throw ParameterError("duration must be non-negative");
  auto source = std::make_shared<const TraceFile>(load_trace(opt.trace, parse_period_unit(opt.period_unit)));
  TraceFileBurstGenerator gen(source, seconds_to_nanos(opt.start_time_s));

  TraceFile trace;
  const Nanos limit = opt.duration_s > 0.0 ? seconds_to_nanos(opt.duration_s) : Nanos::max();
  Nanos elapsed{0};
  const auto first = gen.cursor();
  while (gen.has_next_burst() && elapsed < limit) {
    const auto b = gen.generate_burst();
    trace.records.push_back(b);
    elapsed += b.next_period;
  }
  if (trace.records.empty()) throw InsufficientDataError("no records at or after the requested start time");

  trace.metadata = source->metadata;
  trace.metadata["generator"] = std::string(kToolName) + " replay";
  trace.metadata["command"] = std::string(kToolName) + " replay --trace " + opt.trace + " --start-time " +
                              fmt(opt.start_time_s) + " --duration-s " + fmt(opt.duration_s) + " --period-unit " +
                              opt.period_unit;
  trace.metadata["replay_source"] = opt.trace;
  trace.metadata["replay_first_record"] = fmt(static_cast<std::uint64_t>(first));
  trace.metadata["period_unit"] = "us";

  Output o(opt.out, out);
  write_trace(o.stream(), trace);
  o.finish();
  return 0;
}

int cmd_simulate(const SimulateOptions& opt, std::ostream& out, std::ostream&) {
  const auto src = resolve_source(opt.source, true);
  const auto counts = parse_station_counts(opt.stations);
  if (opt.start_offsets != "zero" && opt.start_offsets != "random") {
    throw ParameterError("--start-offsets must be 'zero' or 'random'");
  }
  if (opt.prop_delay_us < 0.0) throw ConfigError("propagation delay must be non-negative");
  if (opt.start_time_step_s < 0.0) throw ParameterError("start time step must be non-negative");

  json doc;
  Metadata meta{{"generator", std::string(kToolName) + " simulate"}};
  std::string command = std::string(kToolName) + " simulate " + src.flags + " --stations " + opt.stations +
                        " --link-mbps " + fmt(opt.link_mbps) + " --prop-delay-us " + fmt(opt.prop_delay_us) +
                        " --overhead-bytes " + fmt(std::uint64_t{opt.overhead_bytes}) + " --loss " + fmt(opt.loss) +
                        " --queue-limit " + fmt(std::uint64_t{opt.queue_limit}) + " --fragment-size " +
                        fmt(std::uint64_t{opt.fragment_size}) + " --duration-s " + fmt(opt.duration_s) +
                        " --seed " + fmt(opt.seed) + " --start-offsets " + opt.start_offsets;
  if (opt.start_time_step_s > 0.0) command += " --start-time-step " + fmt(opt.start_time_step_s);
  meta.emplace_back("command", command);
  meta.emplace_back("rng_algorithm", std::string(RngStream::kAlgorithmId));
  meta.emplace_back("seed", fmt(opt.seed));
  meta.insert(meta.end(), src.meta.begin(), src.meta.end());
  meta.emplace_back("link_mbps", fmt(opt.link_mbps));
  meta.emplace_back("prop_delay_us", fmt(opt.prop_delay_us));
  meta.emplace_back("overhead_bytes", fmt(std::uint64_t{opt.overhead_bytes}));
  meta.emplace_back("loss", fmt(opt.loss));
  meta.emplace_back("queue_limit", fmt(std::uint64_t{opt.queue_limit}));
  meta.emplace_back("fragment_size", fmt(std::uint64_t{opt.fragment_size}));
  meta.emplace_back("duration_s", fmt(opt.duration_s));
  meta.emplace_back("start_offsets", opt.start_offsets);
  doc["meta"] = meta_json(meta);
  auto& reports = doc["reports"] = json::array();

  for (const auto n : counts) {
    ScenarioConfig cfg = ScenarioConfig::uniform(n, src.spec);
    cfg.link_rate_bps = opt.link_mbps * 1e6;
    cfg.propagation_delay = seconds_to_nanos(opt.prop_delay_us * 1e-6);
    cfg.overhead_bytes = opt.overhead_bytes;
    cfg.loss_prob = opt.loss;
    cfg.queue_limit = opt.queue_limit;
    cfg.duration = seconds_to_nanos(opt.duration_s);
    cfg.seed = opt.seed;
    cfg.fragment_size = opt.fragment_size;
    cfg.start_offsets = opt.start_offsets == "random" ? StartOffsets::kRandom : StartOffsets::kZero;
    if (opt.start_time_step_s > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        if (auto* t = std::get_if<TraceSource>(&cfg.stations[i].source)) {
          t->start_time += seconds_to_nanos(opt.start_time_step_s * static_cast<double>(i));
        }
      }
    }
    auto report = run_scenario(cfg);
    report.metadata["n_stations"] = fmt(static_cast<std::uint64_t>(n));
    report.metadata["seed"] = fmt(opt.seed);
    reports.push_back(to_json(report));
  }

  Output o(opt.out, out);
  o.stream() << doc.dump(2) << '\n';
  o.finish();
  return 0;
}

int cmd_fit(const FitCliOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.traces.empty()) throw ParameterError("fit needs at least two trace files");
  const auto unit = parse_period_unit(opt.period_unit);
  std::vector<TraceGroup> groups;
  for (const auto& path : opt.traces) {
    const auto trace = load_trace(path, unit);
    groups.push_back(group_from_trace(trace, std::filesystem::path(path).stem().string()));
  }
  FitOptions fo;
  fo.em.restarts = opt.restarts;
  fo.em.max_iter = opt.max_iter;
  fo.em.tol = opt.tol;
  fo.uniform_weights = opt.uniform_weights;
  RngStream rng(opt.seed, 0);
  const auto report = fit_vr_model(groups, rng, fo);

  json doc;
  std::string command = std::string(kToolName) + " fit --seed " + fmt(opt.seed) + " --restarts " +
                        std::to_string(opt.restarts) + " --max-iter " + std::to_string(opt.max_iter) + " --tol " +
                        fmt(opt.tol) + " --period-unit " + opt.period_unit;
  if (opt.uniform_weights) command += " --uniform-weights";
  for (const auto& t : opt.traces) command += " " + t;
  Metadata meta{{"generator", std::string(kToolName) + " fit"},
                {"command", command},
                {"rng_algorithm", std::string(RngStream::kAlgorithmId)},
                {"seed", fmt(opt.seed)},
                {"weighting", opt.uniform_weights ? "uniform" : "goodness_rank"}};
  doc["meta"] = meta_json(meta);
  doc["meta"]["inputs"] = opt.traces;
  const auto body = json::parse(fit_report_to_json(report));
  for (auto& [k, v] : body.items()) doc[k] = v;

  Output o(opt.out, out);
  o.stream() << doc.dump(2) << '\n';
  o.finish();
  if (!report.valid) {
    err << "fit: pooled constants are invalid: " << report.invalid_reason << '\n';
    return 3;
  }
  return 0;
}

int cmd_stats(const StatsOptions& opt, std::ostream& out, std::ostream&) {
  const auto trace = load_trace(opt.trace, parse_period_unit(opt.period_unit));
  std::vector<double> sizes, periods_us;
  double total_bytes = 0.0;
  for (const auto& r : trace.records) {
    sizes.push_back(static_cast<double>(r.burst_size));
    periods_us.push_back(static_cast<double>(r.next_period.count()) / 1000.0);
    total_bytes += static_cast<double>(r.burst_size);
  }
  const double duration_s = to_seconds(trace.duration());

  json doc;
  doc["meta"] = meta_json({{"generator", std::string(kToolName) + " stats"},
                           {"command", std::string(kToolName) + " stats --trace " + opt.trace + " --period-unit " +
                                           opt.period_unit},
                           {"trace", opt.trace}});
  doc["trace_metadata"] = json::object();
  for (const auto& [k, v] : trace.metadata) doc["trace_metadata"][k] = v;
  doc["count"] = trace.records.size();
  doc["duration_s"] = duration_s;
  doc["size_bytes"] = describe(std::move(sizes));
  doc["period_us"] = describe(std::move(periods_us));
  doc["data_rate_bps"] = total_bytes * 8.0 / duration_s;

  Output o(opt.out, out);
  o.stream() << doc.dump(2) << '\n';
  o.finish();
  return 0;
}

}  // namespace burstkit::cli
