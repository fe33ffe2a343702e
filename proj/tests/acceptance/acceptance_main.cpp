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

// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "burstkit/fit.hpp"
#include "burstkit/model.hpp"
#include "burstkit/reassembler.hpp"
#include "burstkit/sim.hpp"
#include "burstkit/wire.hpp"
#include "cli/cli.hpp"

namespace {

using namespace burstkit;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmtd(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

struct Moments {
  double mean, stddev;
};

Moments moments(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  const double m = s / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

std::vector<double> ifi_samples(double fps, std::uint64_t seed) {
  const VrStreamParams p{50e6, fps};
  const auto model = derive_ifi_model(p, VrModelConstants{});
  RngStream rng(seed, 0);
  std::vector<double> xs(1'000'000);
  for (auto& x : xs) x = sample_vr_ifi(model, rng);
  return xs;
}

Outcome ifi_mean() {
  bool ok = true;
  std::string d;
  for (double fps : {30.0, 60.0}) {
    const auto m = moments(ifi_samples(fps, 1000 + static_cast<std::uint64_t>(fps))).mean;
    const double err = rel(m, 1.0 / fps);
    ok = ok && err <= 0.005;
    d += fmtd("%.0f FPS: ", fps) + fmtd("%.4f ms", m * 1e3) + fmtd(" (err %.4f%%)  ", err * 100);
  }
  return {ok, d};
}

Outcome ifi_std() {
  bool ok = true;
  std::string d;
  const double c = VrModelConstants{}.c;
  for (double fps : {30.0, 60.0}) {
    const auto sd = moments(ifi_samples(fps, 2000 + static_cast<std::uint64_t>(fps))).stddev;
    const double err = rel(sd, c / fps);
    ok = ok && err <= 0.02;
    d += fmtd("%.0f FPS: ", fps) + fmtd("%.4f ms", sd * 1e3) + fmtd(" vs c/F %.4f ms", c / fps * 1e3) +
         fmtd(" (err %.3f%%)  ", err * 100);
  }
  return {ok, d};
}

Outcome frame_mean() {
  const VrModelConstants k;
  const VrStreamParams p{50e6, 60};
  const auto model = derive_frame_size_model(p, k);
  RngStream rng(3000, 0);
  double sum = 0;
  constexpr int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(sample_vr_frame(model, rng));
  const double mean = sum / n;
  bool ok = rel(mean, 104166.6667) <= 0.01;
  std::string d = fmtd("50 Mbps/60 FPS mean %.1f B", mean) + fmtd(" (err %.3f%%);", rel(mean, 104166.6667) * 100);

  RngStream pick(3001, 0);
  double worst_identity = 0, worst_sampled = 0;
  for (int i = 0; i < 5; ++i) {
    const VrStreamParams q{pick.uniform(5e6, 100e6), pick.uniform(20, 120)};
    const auto m = derive_frame_size_model(q, k);
    const double S = q.mean_frame_size();
    worst_identity = std::max(worst_identity, rel(m.mean(), S));
    RngStream r(3002 + static_cast<std::uint64_t>(i), 0);
    double s = 0;
    constexpr int m_n = 200'000;
    for (int j = 0; j < m_n; ++j) s += gmm2_sample(m, r);
    worst_sampled = std::max(worst_sampled, rel(s / m_n, S));
  }
  ok = ok && worst_identity <= 1e-12 && worst_sampled <= 0.01;
  d += fmtd(" 5 random (R,F): max |E[V]-S|/S analytic %.2e", worst_identity) +
       fmtd(", sampled %.3f%%", worst_sampled * 100);
  return {ok, d};
}

Outcome mixture_weight() {
  const auto model = derive_frame_size_model(VrStreamParams{50e6, 60}, VrModelConstants{});
  RngStream rng(4000, 0);
  int hi = 0;
  constexpr int n = 1'000'000;
  for (int i = 0; i < n; ++i) hi += gmm2_draw(model, rng).from_hi;
  const double f = static_cast<double>(hi) / n;
  return {std::abs(f - 0.360) <= 0.01, fmtd("I-frame frequency %.4f", f) + fmtd(" (w_I = %.4f)", model.w_hi)};
}

Outcome power_law_units() {
  const double S = 22836;
  const VrStreamParams p{S * 8 * 30, 30};
  const auto m = derive_frame_size_model(p, VrModelConstants{});
  const bool ok = m.sigma_lo >= 4750 && m.sigma_lo <= 4850 && m.sigma_hi >= 8200 && m.sigma_hi <= 8300;
  return {ok, fmtd("S = %.0f B: ", S) + fmtd("sigma_P = %.1f B, ", m.sigma_lo) + fmtd("sigma_I = %.1f B", m.sigma_hi)};
}

Outcome codec() {
  RngStream rng(6000, 0);
  int bad = 0, bad_len = 0;
  for (int i = 0; i < 100'000; ++i) {
    FragmentHeader h;
    h.burst_seq = static_cast<std::uint32_t>(rng.next_u64());
    h.frag_count = static_cast<std::uint16_t>(1 + rng.next_u64() % 65535);
    h.frag_index = static_cast<std::uint16_t>(rng.next_u64() % h.frag_count);
    h.burst_size = rng.next_u64();
    h.timestamp_ns = rng.next_u64();
    const auto bytes = encode_header(h);
    bad_len += bytes.size() != 24;
    bad += !(decode_header(bytes) == h) || encode_header(decode_header(bytes)) != bytes;
  }
  return {bad == 0 && bad_len == 0,
          "100000 headers: " + std::to_string(bad) + " mismatches, " + std::to_string(bad_len) + " wrong lengths"};
}

Outcome reassembly() {
  // (a) lossless ordered delivery
  BurstReassembler a;
  int received = 0, discarded = 0;
  constexpr int kBursts = 200;
  RngStream rng(7000, 0);
  for (int b = 0; b < kBursts; ++b) {
    for (const auto& f : fragment_burst(static_cast<std::uint32_t>(b), 1 + rng.next_u64() % 200000, 0)) {
      const auto r = a.on_fragment(f.header, Nanos{1}, f.payload_len);
      received += r.received.has_value();
      discarded += r.discarded.has_value();
    }
  }
  discarded += a.flush().has_value();
  const bool ok_a = received == kBursts && discarded == 0;

  // (b) one fragment of burst 5 dropped, burst 6 follows
  BurstReassembler b;
  std::vector<std::uint32_t> disc;
  int rec_b = 0;
  for (std::uint32_t s = 0; s < 10; ++s) {
    for (const auto& f : fragment_burst(s, 5000, 0)) {
      if (s == 5 && f.header.frag_index == 2) continue;
      const auto r = b.on_fragment(f.header, Nanos{1}, f.payload_len);
      if (r.discarded) disc.push_back(r.discarded->burst_seq);
      rec_b += r.received.has_value();
    }
  }
  const bool ok_b = disc == std::vector<std::uint32_t>{5} && rec_b == 9;

  // (c) unordered within a burst
  BurstReassembler c;
  auto frags = fragment_burst(0, 3000, 0);
  bool ok_c = false;
  for (int idx : {2, 0, 1}) ok_c = c.on_fragment(frags[static_cast<std::size_t>(idx)].header, Nanos{1}, 0).received.has_value();

  return {ok_a && ok_b && ok_c, "(a) " + std::to_string(received) + "/" + std::to_string(kBursts) +
                                    " received; (b) discarded {" + (disc.empty() ? "" : std::to_string(disc[0])) +
                                    (disc.size() > 1 ? ",..." : "") + "}, " + std::to_string(rec_b) +
                                    "/9 others received; (c) [2,0,1] " + (ok_c ? "received" : "not received")};
}

Outcome fragmentation() {
  const auto f = fragment_burst(0, 3000, 0, 1278);
  std::uint64_t sum = 0;
  std::string sizes;
  for (const auto& x : f) {
    sum += x.payload_len;
    sizes += (sizes.empty() ? "" : "/") + std::to_string(x.payload_len);
  }
  const bool ok = f.size() == 3 && f[0].payload_len == 1254 && f[1].payload_len == 1254 && f[2].payload_len == 492 &&
                  sum == 3000;
  return {ok, std::to_string(f.size()) + " fragments, payloads " + sizes + ", sum " + std::to_string(sum)};
}

Outcome em_oracle() {
  const Gmm2Params truth{0.36, 100000, 8000, 50000, 5000};
  RngStream data(9000, 0), fit_rng(9000, 1);
  std::vector<double> xs(50'000);
  for (auto& x : xs) x = gmm2_sample(truth, data);
  EmOptions opt;
  opt.restarts = 50;
  std::vector<std::vector<double>> ll(50);
  opt.on_iteration = [&](int r, int, double v) { ll[static_cast<std::size_t>(r)].push_back(v); };
  const auto fit = fit_gmm2_em(xs, fit_rng, opt);
  double worst_drop = 0;  // largest relative decrease between consecutive iterations
  for (const auto& t : ll) {
    for (std::size_t i = 1; i < t.size(); ++i) worst_drop = std::max(worst_drop, (t[i - 1] - t[i]) / std::abs(t[i - 1]));
  }
  const bool ok = rel(fit.params.mu_hi, truth.mu_hi) <= 0.02 && rel(fit.params.mu_lo, truth.mu_lo) <= 0.02 &&
                  std::abs(fit.params.w_hi - truth.w_hi) <= 0.02 && worst_drop <= 1e-12;
  return {ok, fmtd("mu %.0f", fit.params.mu_hi) + fmtd("/%.0f", fit.params.mu_lo) +
                  fmtd(", w_hi %.4f", fit.params.w_hi) + " (restart " + std::to_string(fit.restart) +
                  " of 50); max relative LL decrease " + fmtd("%.1e", worst_drop)};
}

Outcome closed_loop() {
  const VrModelConstants k;
  std::vector<TraceGroup> groups;
  std::uint64_t seed = 10000;
  for (double rate : {10e6, 20e6, 30e6, 40e6, 50e6}) {
    for (double fps : {30.0, 60.0}) {
      const VrStreamParams p{rate, fps};
      const auto fm = derive_frame_size_model(p, k);
      const auto im = derive_ifi_model(p, k);
      RngStream rng(seed++, 0);
      TraceGroup g;
      g.label = std::to_string(static_cast<int>(rate / 1e6)) + "/" + std::to_string(static_cast<int>(fps));
      g.target_rate_bps = rate;
      g.frame_rate = fps;
      for (int i = 0; i < 30000; ++i) {
        g.frame_sizes.push_back(static_cast<double>(sample_vr_frame(fm, rng)));
        g.ifis.push_back(sample_vr_ifi(im, rng));
      }
      groups.push_back(std::move(g));
    }
  }
  RngStream rng(10100, 0);
  FitOptions fo;
  fo.em.restarts = 5;
  const auto rep = fit_vr_model(groups, rng, fo);
  const auto& c = rep.constants;
  const bool ok = rep.valid && rel(c.s_I, k.s_I) <= 0.03 && rel(c.s_P, k.s_P) <= 0.03 && rel(c.c, k.c) <= 0.03 &&
                  rel(c.b_I, k.b_I) <= 0.10 && rel(c.b_P, k.b_P) <= 0.10;
  return {ok, fmtd("s_I %.4f", c.s_I) + fmtd(" (%.2f%%)", rel(c.s_I, k.s_I) * 100) + fmtd(", s_P %.4f", c.s_P) +
                  fmtd(" (%.2f%%)", rel(c.s_P, k.s_P) * 100) + fmtd(", c %.5f", c.c) +
                  fmtd(" (%.2f%%)", rel(c.c, k.c) * 100) + fmtd(", b_I %.4f", c.b_I) +
                  fmtd(" (%.1f%%)", rel(c.b_I, k.b_I) * 100) + fmtd(", b_P %.4f", c.b_P) +
                  fmtd(" (%.1f%%)", rel(c.b_P, k.b_P) * 100)};
}

ScenarioConfig vr_scenario(std::size_t n, double fps, std::chrono::seconds duration) {
  auto cfg = ScenarioConfig::uniform(n, VrSource{VrStreamParams{50e6, fps}, VrModelConstants{}});
  cfg.link_rate_bps = 866e6;
  cfg.duration = duration;
  cfg.seed = 11;
  cfg.start_offsets = StartOffsets::kRandom;
  return cfg;
}

Outcome fps_scaling() {
  const auto d30 = run_scenario(vr_scenario(1, 30, std::chrono::seconds(20))).burst.delay.mean_ns;
  const auto d60 = run_scenario(vr_scenario(1, 60, std::chrono::seconds(20))).burst.delay.mean_ns;
  const double ratio = d30 / d60;
  return {ratio >= 1.8 && ratio <= 2.2, fmtd("mean burst delay 30 FPS %.3f ms", d30 / 1e6) +
                                            fmtd(", 60 FPS %.3f ms", d60 / 1e6) + fmtd(", ratio %.3f", ratio)};
}

Outcome station_trend() {
  bool ok = true;
  double prev_mean = 0, prev_p95 = 0;
  std::string d;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto r = run_scenario(vr_scenario(n, 60, std::chrono::seconds(10)));
    const double mean = r.burst.delay.mean_ns;
    const double p95 = static_cast<double>(r.burst.delay.p95_ns.value_or(0));
    ok = ok && mean >= prev_mean && p95 >= prev_p95 && r.fragment.delay.mean_ns <= mean && r.burst.received > 0;
    prev_mean = mean;
    prev_p95 = p95;
    d += "N=" + std::to_string(n) + fmtd(" %.3f", mean / 1e6) + fmtd("/%.3f ms ", p95 / 1e6);
  }
  return {ok, "burst mean/p95: " + d};
}

Outcome determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"generate", "--model", "vr", "--rate-mbps", "50", "--fps", "60", "--duration-s", "20", "--seed", "13"},
      {"generate", "--model", "simple", "--size-dist", "normal:5000:800", "--period-dist", "exp:0.01", "--duration-s",
       "20", "--seed", "13"},
      {"simulate", "--stations", "1..4", "--duration-s", "2", "--loss", "0.01", "--start-offsets", "random", "--seed",
       "13"},
  };
  bool ok = true;
  std::size_t bytes = 0;
  for (const auto& args : commands) {
    std::ostringstream a, b, err;
    const int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
    ok = ok && ca == 0 && cb == 0 && !a.str().empty() && a.str() == b.str();
    bytes += a.str().size();
  }
  return {ok, std::to_string(commands.size()) + " commands repeated, " + std::to_string(bytes) +
                  " bytes compared" + (ok ? ", identical" : ", MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"IFI mean", ifi_mean},
      {"IFI std", ifi_std},
      {"frame-size mean", frame_mean},
      {"mixture weight", mixture_weight},
      {"power-law units", power_law_units},
      {"header codec", codec},
      {"reassembly semantics", reassembly},
      {"fragmentation", fragmentation},
      {"EM oracle", em_oracle},
      {"fit closed loop", closed_loop},
      {"simulation FPS scaling", fps_scaling},
      {"simulation station trend", station_trend},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %-26s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
