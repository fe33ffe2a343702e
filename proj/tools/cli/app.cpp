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

#include <CLI11.hpp>

#include <ostream>

#include "burstkit/error.hpp"
#include "cli/cli.hpp"
#include "cli/commands.hpp"

namespace burstkit::cli {

namespace {

void add_source_flags(CLI::App* cmd, SourceOptions& s, bool with_trace) {
  cmd->add_option("--model", s.model, with_trace ? "vr, simple or trace" : "vr or simple")->capture_default_str();
  cmd->add_option("--rate-mbps", s.rate_mbps, "VR target data rate")->capture_default_str();
  cmd->add_option("--fps", s.fps, "VR frame rate")->capture_default_str();
  cmd->add_option("--params", s.params, "VR model constants (JSON)");
  cmd->add_option("--size-dist", s.size_dist, "simple model burst size variate, e.g. const:3000");
  cmd->add_option("--period-dist", s.period_dist, "simple model period variate in seconds, e.g. exp:0.01");
  if (with_trace) {
    cmd->add_option("--trace", s.trace, "trace CSV for --model trace");
    cmd->add_option("--start-time", s.start_time_s, "trace replay start time (s)")->capture_default_str();
    cmd->add_option("--period-unit", s.period_unit, "trace period column unit: us or s")->capture_default_str();
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bursty traffic generation, simulation and model fitting", "burstkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write a synthetic burst trace");
  add_source_flags(g, gen.source, false);
  g->add_option("--duration-s", gen.duration_s, "trace length (s)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out, "output file, - for stdout")->capture_default_str();

  ReplayOptions rep;
  auto* r = app.add_subcommand("replay", "Re-emit a trace from a start time");
  r->add_option("--trace", rep.trace)->required();
  r->add_option("--start-time", rep.start_time_s, "skip records starting before this time (s)")->capture_default_str();
  r->add_option("--duration-s", rep.duration_s, "replay length (s), 0 for the rest")->capture_default_str();
  r->add_option("--period-unit", rep.period_unit, "us or s")->capture_default_str();
  r->add_option("--out", rep.out)->capture_default_str();

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "Run stations over a shared bottleneck link");
  add_source_flags(s, sim.source, true);
  s->add_option("--stations", sim.stations, "count, range A..B or list")->capture_default_str();
  s->add_option("--link-mbps", sim.link_mbps)->capture_default_str();
  s->add_option("--prop-delay-us", sim.prop_delay_us)->capture_default_str();
  s->add_option("--overhead-bytes", sim.overhead_bytes, "per-fragment lower-layer overhead")->capture_default_str();
  s->add_option("--loss", sim.loss, "per-fragment loss probability")->capture_default_str();
  s->add_option("--queue-limit", sim.queue_limit, "waiting fragments, 0 for unbounded")->capture_default_str();
  s->add_option("--fragment-size", sim.fragment_size)->capture_default_str();
  s->add_option("--duration-s", sim.duration_s)->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--start-offsets", sim.start_offsets, "zero or random")->capture_default_str();
  s->add_option("--start-time-step", sim.start_time_step_s, "trace start time added per station index (s)");
  s->add_option("--out", sim.out)->capture_default_str();

  FitCliOptions fit;
  auto* f = app.add_subcommand("fit", "Fit model constants to traces with fps/target_rate_mbps metadata");
  f->add_option("traces,--trace", fit.traces, "trace CSV files")->required();
  f->add_option("--seed", fit.seed)->capture_default_str();
  f->add_option("--restarts", fit.restarts)->capture_default_str();
  f->add_option("--max-iter", fit.max_iter)->capture_default_str();
  f->add_option("--tol", fit.tol)->capture_default_str();
  f->add_flag("--uniform-weights", fit.uniform_weights, "equal regression weights");
  f->add_option("--period-unit", fit.period_unit)->capture_default_str();
  f->add_option("--out", fit.out)->capture_default_str();

  StatsOptions st;
  auto* t = app.add_subcommand("stats", "Summarize a trace");
  t->add_option("trace,--trace", st.trace)->required();
  t->add_option("--period-unit", st.period_unit)->capture_default_str();
  t->add_option("--out", st.out)->capture_default_str();

  SendOptions snd;
  auto* sd = app.add_subcommand("send", "Send bursts as UDP fragments");
  add_source_flags(sd, snd.source, true);
  sd->add_option("--dest", snd.dest, "host:port")->required();
  sd->add_option("--duration-s", snd.duration_s)->capture_default_str();
  sd->add_option("--count", snd.count, "stop after this many bursts, 0 for no limit")->capture_default_str();
  sd->add_option("--seed", snd.seed)->capture_default_str();
  sd->add_option("--fragment-size", snd.fragment_size)->capture_default_str();
  sd->add_option("--pacing", snd.pacing, "wall or none")->capture_default_str();
  sd->add_option("--out", snd.out)->capture_default_str();

  RecvOptions rcv;
  auto* rv = app.add_subcommand("recv", "Receive UDP fragments and log burst outcomes");
  rv->add_option("--listen", rcv.listen, "host:port")->required();
  rv->add_option("--idle-timeout-s", rcv.idle_timeout_s)->capture_default_str();
  rv->add_option("--duration-s", rcv.duration_s, "0 to stop only when idle")->capture_default_str();
  rv->add_option("--max-bursts", rcv.max_bursts)->capture_default_str();
  rv->add_option("--out", rcv.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen, out, err);
    if (*r) return cmd_replay(rep, out, err);
    if (*s) return cmd_simulate(sim, out, err);
    if (*f) return cmd_fit(fit, out, err);
    if (*t) return cmd_stats(st, out, err);
    if (*sd) return cmd_send(snd, out, err);
    if (*rv) return cmd_recv(rcv, out, err);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {  // parse, decode, insufficient data, exhausted
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"burstkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace burstkit::cli
