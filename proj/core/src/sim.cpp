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

#include "burstkit/sim.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "burstkit/error.hpp"
#include "burstkit/event_queue.hpp"
#include "burstkit/reassembler.hpp"

namespace burstkit {

namespace {

// A station producing this many zero-period bursts in a row would never let
// simulated time advance.
constexpr std::uint64_t kMaxZeroPeriodBursts = 1'000'000;

__extension__ using u128 = unsigned __int128;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

struct BurstDue {
  std::uint32_t station;
};
struct TxDone {
  std::uint32_t station;
  Fragment fragment;
};
struct Arrival {
  std::uint32_t station;
  Fragment fragment;
};
using SimEvent = std::variant<BurstDue, TxDone, Arrival>;

struct Queued {
  std::uint32_t station;
  Fragment fragment;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg) : cfg_(cfg), loss_rng_(cfg.seed, StreamIds::kLoss) {
    const auto n = cfg.stations.size();
    log_.stations.resize(n);
    log_.duration = cfg.duration;
    reassemblers_.resize(n);
    next_seq_.assign(n, 0);
    zero_periods_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& st = cfg.stations[i];
      generators_.push_back(make_generator(st.source, RngStream(cfg.seed, StreamIds::generator(i))));
      Nanos start = st.start_offset;
      if (cfg.start_offsets == StartOffsets::kRandom) {
        RngStream offset_rng(cfg.seed, StreamIds::start_offset(i));
        start += seconds_to_nanos(offset_rng.uniform() * mean_period_seconds(st.source));
      }
      events_.push(start, BurstDue{static_cast<std::uint32_t>(i)});
    }
  }

  EventLog run() {
    while (!events_.empty()) {
      auto e = events_.pop();
      now_ = e.time;
      std::visit(overloaded{
                     [&](const BurstDue& ev) { on_burst_due(ev); },
                     [&](const TxDone& ev) { on_tx_done(ev); },
                     [&](const Arrival& ev) { on_arrival(ev); },
                 },
                 e.payload);
    }
    for (std::size_t i = 0; i < reassemblers_.size(); ++i) {
      if (auto d = reassemblers_[i].flush()) {
        log_.bursts.push_back({static_cast<std::uint32_t>(i), d->burst_seq, false, Nanos{0}});
      }
    }
    log_.end_time = now_;
    return std::move(log_);
  }

 private:
  void on_burst_due(const BurstDue& ev) {
    if (now_ >= cfg_.duration) return;
    auto& gen = *generators_[ev.station];
    if (!gen.has_next_burst()) return;
    const auto burst = gen.generate_burst();
    auto& counts = log_.stations[ev.station];
    const auto seq = next_seq_[ev.station]++;
    const auto frags = fragment_burst(seq, burst.burst_size, static_cast<std::uint64_t>(now_.count()),
                                      cfg_.fragment_size);
    ++counts.bursts_sent;
    counts.fragments_sent += frags.size();
    for (const auto& f : frags) {
      if (cfg_.queue_limit != 0 && queue_.size() >= cfg_.queue_limit) {
        ++counts.fragments_dropped_queue;
        continue;
      }
      queue_.push_back({ev.station, f});
    }
    if (!link_busy_) start_service();

    if (burst.next_period == Nanos{0}) {
      if (++zero_periods_[ev.station] >= kMaxZeroPeriodBursts) {
        throw ConfigError("station " + std::to_string(ev.station) + " keeps generating zero-length periods");
      }
    } else {
      zero_periods_[ev.station] = 0;
    }
    events_.push(now_ + burst.next_period, BurstDue{ev.station});
  }

  void start_service() {
    if (queue_.empty()) {
      link_busy_ = false;
      return;
    }
    link_busy_ = true;
    const auto q = queue_.front();
    queue_.pop_front();
    const auto bytes = q.fragment.wire_size() + cfg_.overhead_bytes;
    const auto tx = serialization_time(bytes, cfg_.link_rate_bps);
    log_.link_busy += tx;
    log_.link_served_bytes += bytes;
    events_.push(now_ + tx, TxDone{q.station, q.fragment});
  }

  void on_tx_done(const TxDone& ev) {
    // One loss draw per served fragment, whatever the probability.
    if (loss_rng_.bernoulli(cfg_.loss_prob)) {
      ++log_.stations[ev.station].fragments_lost_channel;
    } else {
      events_.push(now_ + cfg_.propagation_delay, Arrival{ev.station, ev.fragment});
    }
    start_service();
  }

  void on_arrival(const Arrival& ev) {
    const auto& h = ev.fragment.header;
    const auto res = reassemblers_[ev.station].on_fragment(h, now_, ev.fragment.payload_len);
    if (res.discarded) log_.bursts.push_back({ev.station, res.discarded->burst_seq, false, Nanos{0}});
    if (res.disposition == FragmentDisposition::kAccepted) {
      log_.fragments.push_back({ev.station, h.burst_seq, now_ - Nanos{static_cast<Nanos::rep>(h.timestamp_ns)},
                                ev.fragment.payload_len});
    }
    if (res.received) log_.bursts.push_back({ev.station, res.received->burst_seq, true, res.received->delay});
  }

  const ScenarioConfig& cfg_;
  RngStream loss_rng_;
  EventQueue<SimEvent> events_;
  std::vector<std::unique_ptr<BurstGenerator>> generators_;
  std::vector<BurstReassembler> reassemblers_;
  std::vector<std::uint32_t> next_seq_;
  std::vector<std::uint64_t> zero_periods_;
  std::deque<Queued> queue_;
  bool link_busy_ = false;
  Nanos now_{0};
  EventLog log_;
};

}  // namespace

std::unique_ptr<BurstGenerator> make_generator(const SourceSpec& spec, RngStream rng) {
  return std::visit(overloaded{
                        [&](const VrSource& s) -> std::unique_ptr<BurstGenerator> {
                          return std::make_unique<VrBurstGenerator>(s.params, s.constants, std::move(rng));
                        },
                        [&](const SimpleSource& s) -> std::unique_ptr<BurstGenerator> {
                          return std::make_unique<SimpleBurstGenerator>(s.size_bytes, s.period_seconds,
                                                                        std::move(rng));
                        },
                        [&](const TraceSource& s) -> std::unique_ptr<BurstGenerator> {
                          return std::make_unique<TraceFileBurstGenerator>(s.trace, s.start_time);
                        },
                    },
                    spec);
}

double mean_period_seconds(const SourceSpec& spec) {
  return std::visit(overloaded{
                        [](const VrSource& s) { return 1.0 / s.params.frame_rate; },
                        [](const SimpleSource& s) { return std::max(0.0, variate_mean(s.period_seconds)); },
                        [](const TraceSource& s) {
                          return s.trace && !s.trace->records.empty()
                                     ? to_seconds(s.trace->duration()) / static_cast<double>(s.trace->records.size())
                                     : 0.0;
                        },
                    },
                    spec);
}

ScenarioConfig ScenarioConfig::uniform(std::size_t n_stations, const SourceSpec& source) {
  ScenarioConfig cfg;
  cfg.stations.assign(n_stations, StationConfig{source, Nanos{0}});
  return cfg;
}

void ScenarioConfig::validate() const {
  if (!(link_rate_bps > 0.0) || !std::isfinite(link_rate_bps)) throw ConfigError("link rate must be positive");
  if (!(loss_prob >= 0.0 && loss_prob <= 1.0)) throw ConfigError("loss probability must lie in [0, 1]");
  if (propagation_delay < Nanos{0}) throw ConfigError("propagation delay must be non-negative");
  if (duration < Nanos{0}) throw ConfigError("duration must be non-negative");
  if (fragment_size <= FragmentHeader::kEncodedSize) throw ConfigError("fragment size must exceed 24 B");
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto& st = stations[i];
    if (st.start_offset < Nanos{0}) throw ConfigError("station start offset must be non-negative");
    if (const auto* vr = std::get_if<VrSource>(&st.source)) {
      vr->params.validate();
      vr->constants.validate();
    } else if (const auto* tr = std::get_if<TraceSource>(&st.source)) {
      if (!tr->trace) throw ConfigError("trace source without a trace");
    } else if (const auto* simple = std::get_if<SimpleSource>(&st.source)) {
      if (!(variate_mean(simple->period_seconds) > 0.0)) {
        throw ConfigError("station " + std::to_string(i) + ": period variate must have a positive mean");
      }
    }
  }
}

Nanos serialization_time(std::uint64_t bytes, double link_rate_bps) {
  const std::uint64_t bits = bytes * 8;
  const double rate_floor = std::floor(link_rate_bps);
  if (rate_floor == link_rate_bps && link_rate_bps < 1.8e19) {
    // Exact integer ceil(bits * 1e9 / rate).
    const auto rate = static_cast<u128>(link_rate_bps);
    const auto num = static_cast<u128>(bits) * 1'000'000'000u;
    return Nanos{static_cast<Nanos::rep>((num + rate - 1) / rate)};
  }
  return Nanos{static_cast<Nanos::rep>(std::ceil(static_cast<double>(bits) * 1e9 / link_rate_bps))};
}

EventLog simulate(const ScenarioConfig& cfg) {
  cfg.validate();
  return Simulation(cfg).run();
}

MetricsReport run_scenario(const ScenarioConfig& cfg) {
  auto report = summarize(simulate(cfg));
  report.metadata["rng_algorithm"] = std::string(RngStream::kAlgorithmId);
  return report;
}

}  // namespace burstkit
