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

#include "burstkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln(sqrt(2*pi))
constexpr double kSigmaFloorFraction = 1e-6;

struct Moments {
  double mean;
  double stddev;  // n-1 denominator
};

Moments sample_moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

double log_normal_density(double x, double mu, double sigma) {
  const double z = (x - mu) / sigma;
  return -0.5 * z * z - std::log(sigma) - kLogSqrt2Pi;
}

// Component 1/2 mixture state during EM; mapped to hi/lo only at the end.
struct EmState {
  double w1, mu1, s1, mu2, s2;
};

// E-step: returns the log-likelihood and fills resp with component-1 responsibilities.
double e_step(std::span<const double> xs, const EmState& st, std::vector<double>& resp) {
  const double lw1 = st.w1 > 0.0 ? std::log(st.w1) : -std::numeric_limits<double>::infinity();
  const double lw2 = st.w1 < 1.0 ? std::log1p(-st.w1) : -std::numeric_limits<double>::infinity();
  const double c1 = lw1 - std::log(st.s1) - kLogSqrt2Pi;
  const double c2 = lw2 - std::log(st.s2) - kLogSqrt2Pi;
  const double inv1 = 1.0 / st.s1, inv2 = 1.0 / st.s2;
  double ll = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double z1 = (xs[i] - st.mu1) * inv1;
    const double z2 = (xs[i] - st.mu2) * inv2;
    const double a = c1 - 0.5 * z1 * z1;
    const double b = c2 - 0.5 * z2 * z2;
    if (a >= b) {
      const double e = std::exp(b - a);
      ll += a + std::log1p(e);
      resp[i] = 1.0 / (1.0 + e);
    } else {
      const double e = std::exp(a - b);
      ll += b + std::log1p(e);
      resp[i] = e / (1.0 + e);
    }
  }
  return ll;
}

void m_step(std::span<const double> xs, const std::vector<double>& resp, double sigma_floor, EmState& st) {
  const double n = static_cast<double>(xs.size());
  double n1 = 0.0, sx1 = 0.0, sx2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    n1 += resp[i];
    sx1 += resp[i] * xs[i];
    sx2 += (1.0 - resp[i]) * xs[i];
  }
  const double n2 = n - n1;
  // A component with no responsibility left keeps its location and spread.
  const double eps = 1e-12 * n;
  const double mu1 = n1 > eps ? sx1 / n1 : st.mu1;
  const double mu2 = n2 > eps ? sx2 / n2 : st.mu2;
  double v1 = 0.0, v2 = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d1 = xs[i] - mu1, d2 = xs[i] - mu2;
    v1 += resp[i] * d1 * d1;
    v2 += (1.0 - resp[i]) * d2 * d2;
  }
  st.w1 = std::clamp(n1 / n, 0.0, 1.0);
  st.mu1 = mu1;
  st.mu2 = mu2;
  if (n1 > eps) st.s1 = std::max(std::sqrt(v1 / n1), sigma_floor);
  if (n2 > eps) st.s2 = std::max(std::sqrt(v2 / n2), sigma_floor);
}

Gmm2Params to_params(const EmState& st) {
  Gmm2Params p;
  if (st.mu1 >= st.mu2) {
    p = {st.w1, st.mu1, st.s1, st.mu2, st.s2};
  } else {
    p = {1.0 - st.w1, st.mu2, st.s2, st.mu1, st.s1};
  }
  return p;
}

std::vector<double> normalized_weights(std::span<const double> weights, std::size_t n) {
  if (weights.empty()) return std::vector<double>(n, 1.0);
  if (weights.size() != n) throw ParameterError("weights and points differ in length");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError("regression weights must be non-negative");
  }
  return {weights.begin(), weights.end()};
}

double parse_metadata_number(const TraceFile& trace, const std::string& key) {
  const auto it = trace.metadata.find(key);
  if (it == trace.metadata.end()) return 0.0;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ParseError("trace metadata '" + key + "' is not a number: '" + it->second + "'");
  }
}

}  // namespace

LogisticParams fit_logistic(std::span<const double> samples) {
  if (samples.size() < 2) throw InsufficientDataError("logistic fit needs at least two samples");
  const auto m = sample_moments(samples);
  return {m.mean, LogisticParams::scale_for_stddev(m.stddev)};
}

double gmm2_log_likelihood(std::span<const double> samples, const Gmm2Params& p) {
  double ll = 0.0;
  for (double x : samples) {
    const double a = p.w_hi > 0.0 ? std::log(p.w_hi) + log_normal_density(x, p.mu_hi, p.sigma_hi)
                                  : -std::numeric_limits<double>::infinity();
    const double b = p.w_hi < 1.0 ? std::log1p(-p.w_hi) + log_normal_density(x, p.mu_lo, p.sigma_lo)
                                  : -std::numeric_limits<double>::infinity();
    const double m = std::max(a, b);
    ll += m + std::log1p(std::exp(std::min(a, b) - m));
  }
  return ll;
}

Gmm2Fit fit_gmm2_em(std::span<const double> samples, RngStream& rng, const EmOptions& options) {
  if (samples.size() < 10) throw InsufficientDataError("mixture fit needs at least 10 samples");
  if (options.restarts < 1 || options.max_iter < 1) throw ParameterError("EM needs at least one restart and iteration");
  const auto moments = sample_moments(samples);
  if (!(moments.stddev > 0.0)) throw InsufficientDataError("mixture fit on samples with zero variance");
  const double sigma_floor = kSigmaFloorFraction * moments.stddev;
  const double n = static_cast<double>(samples.size());

  // Draw every restart's initial means before running any of them.
  std::vector<EmState> inits;
  inits.reserve(static_cast<std::size_t>(options.restarts));
  const auto pick = [&] { return std::min(static_cast<std::size_t>(rng.uniform() * n), samples.size() - 1); };
  for (int r = 0; r < options.restarts; ++r) {
    const auto i = pick();
    auto j = pick();
    for (int tries = 0; (j == i || samples[j] == samples[i]) && tries < 1000; ++tries) j = pick();
    inits.push_back({0.5, samples[i], moments.stddev, samples[j], moments.stddev});
  }

  Gmm2Fit best;
  best.log_likelihood = -std::numeric_limits<double>::infinity();
  std::vector<double> resp(samples.size());
  for (int r = 0; r < options.restarts; ++r) {
    EmState st = inits[static_cast<std::size_t>(r)];
    double ll = e_step(samples, st, resp);
    if (options.on_iteration) options.on_iteration(r, 0, ll);
    int it = 0;
    bool converged = false;
    while (it < options.max_iter) {
      ++it;
      m_step(samples, resp, sigma_floor, st);
      const double next = e_step(samples, st, resp);
      if (options.on_iteration) options.on_iteration(r, it, next);
      const bool done = (next - ll) / n < options.tol;
      ll = next;
      if (done) {
        converged = true;
        break;
      }
    }
    if (ll > best.log_likelihood) {
      best.params = to_params(st);
      best.log_likelihood = ll;
      best.n_iterations = it;
      best.converged = converged;
      best.restart = r;
    }
  }
  return best;
}

double fit_linear_through_origin(std::span<const Point2> points, std::span<const double> weights) {
  if (points.empty()) throw InsufficientDataError("linear fit needs at least one point");
  const auto w = normalized_weights(weights, points.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sxy += w[i] * points[i].x * points[i].y;
    sxx += w[i] * points[i].x * points[i].x;
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("linear fit through the origin needs a non-zero abscissa");
  return sxy / sxx;
}

double PowerLaw::operator()(double x) const { return a * std::pow(x, b); }

PowerLaw fit_power_law(std::span<const Point2> points, std::span<const double> weights) {
  if (points.size() < 2) throw InsufficientDataError("power-law fit needs at least two points");
  const auto w = normalized_weights(weights, points.size());
  double sw = 0.0, sx = 0.0, sy = 0.0;
  std::vector<double> lx(points.size()), ly(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].x > 0.0) || !(points[i].y > 0.0)) {
      throw ParameterError("power-law fit needs strictly positive coordinates");
    }
    lx[i] = std::log(points[i].x);
    ly[i] = std::log(points[i].y);
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
  }
  if (!(sw > 0.0)) throw InsufficientDataError("power-law fit weights sum to zero");
  const double mx = sx / sw, my = sy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    sxx += w[i] * (lx[i] - mx) * (lx[i] - mx);
    sxy += w[i] * (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("power-law fit needs at least two distinct abscissae");
  const double b = sxy / sxx;
  return {std::exp(my - b * mx), b};
}

TraceGroup group_from_trace(const TraceFile& trace, std::string label, double target_rate_bps, double frame_rate) {
  TraceGroup g;
  g.label = std::move(label);
  g.target_rate_bps = target_rate_bps > 0.0 ? target_rate_bps : parse_metadata_number(trace, "target_rate_mbps") * 1e6;
  g.frame_rate = frame_rate > 0.0 ? frame_rate : parse_metadata_number(trace, "fps");
  if (!(g.frame_rate > 0.0)) throw ParseError("trace '" + g.label + "' has no usable 'fps' metadata");
  g.frame_sizes.reserve(trace.records.size());
  g.ifis.reserve(trace.records.size());
  for (const auto& r : trace.records) {
    g.frame_sizes.push_back(static_cast<double>(r.burst_size));
    g.ifis.push_back(to_seconds(r.next_period));
  }
  return g;
}

FitReport fit_vr_model(std::span<const TraceGroup> groups, RngStream& rng, const FitOptions& options) {
  if (groups.size() < 2) throw InsufficientDataError("model fit needs at least two (rate, frame rate) groups");
  FitReport report;
  std::set<double> distinct_sizes;
  for (const auto& g : groups) {
    if (!(g.frame_rate > 0.0)) throw ParameterError("group '" + g.label + "' has no frame rate");
    GroupFit gf;
    gf.label = g.label;
    gf.target_rate_bps = g.target_rate_bps;
    gf.frame_rate = g.frame_rate;
    gf.n_frames = g.frame_sizes.size();
    gf.gmm = fit_gmm2_em(g.frame_sizes, rng, options.em);
    gf.empirical_mean_size = sample_moments(g.frame_sizes).mean;
    gf.ifi = fit_logistic(g.ifis);
    gf.ifi_stddev = gf.ifi.stddev();
    gf.goodness = gf.gmm.log_likelihood / static_cast<double>(gf.n_frames) + std::log(gf.empirical_mean_size);
    distinct_sizes.insert(gf.empirical_mean_size);
    report.groups.push_back(std::move(gf));
  }
  if (distinct_sizes.size() < 2) throw InsufficientDataError("model fit needs at least two distinct mean frame sizes");

  const auto k = report.groups.size();
  if (options.uniform_weights) {
    for (auto& gf : report.groups) gf.weight = 1.0 / static_cast<double>(k);
  } else {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return report.groups[a].goodness < report.groups[b].goodness; });
    const double rank_sum = static_cast<double>(k * (k + 1)) / 2.0;
    for (std::size_t r = 0; r < k; ++r) report.groups[order[r]].weight = static_cast<double>(r + 1) / rank_sum;
  }

  std::vector<Point2> mean_hi, mean_lo, sd_hi, sd_lo;
  std::vector<double> w;
  double c_sum = 0.0;
  for (const auto& gf : report.groups) {
    const double S = gf.empirical_mean_size;
    mean_hi.push_back({S, gf.gmm.params.mu_hi});
    mean_lo.push_back({S, gf.gmm.params.mu_lo});
    sd_hi.push_back({S, gf.gmm.params.sigma_hi});
    sd_lo.push_back({S, gf.gmm.params.sigma_lo});
    w.push_back(gf.weight);
    c_sum += gf.ifi_stddev * gf.frame_rate;
  }

  auto& kc = report.constants;
  kc.c = c_sum / static_cast<double>(k);
  kc.s_I = fit_linear_through_origin(mean_hi, w);
  kc.s_P = fit_linear_through_origin(mean_lo, w);
  const auto hi = fit_power_law(sd_hi, w);
  const auto lo = fit_power_law(sd_lo, w);
  kc.a_I = hi.a;
  kc.b_I = hi.b;
  kc.a_P = lo.a;
  kc.b_P = lo.b;
  if (!(kc.s_P <= 1.0 && 1.0 <= kc.s_I) || kc.s_I == kc.s_P) {
    report.valid = false;
    report.invalid_reason = "pooled slopes violate s_P <= 1 <= s_I";
  }
  return report;
}

std::string fit_report_to_json(const FitReport& report, int indent) {
  nlohmann::ordered_json j;
  j["constants"] = nlohmann::ordered_json::parse(constants_to_json(report.constants));
  j["valid"] = report.valid;
  if (!report.valid) j["invalid_reason"] = report.invalid_reason;
  if (report.valid) {
    const auto w = derive_weights(report.constants.s_I, report.constants.s_P);
    j["weights"] = {{"w_I", w.w_I}, {"w_P", w.w_P}};
  }
  auto& groups = j["groups"] = nlohmann::ordered_json::array();
  for (const auto& g : report.groups) {
    nlohmann::ordered_json o;
    o["label"] = g.label;
    o["target_rate_mbps"] = g.target_rate_bps / 1e6;
    o["fps"] = g.frame_rate;
    o["frames"] = g.n_frames;
    o["mean_frame_size"] = g.empirical_mean_size;
    o["gmm"] = {{"w_I", g.gmm.params.w_hi},          {"mu_I", g.gmm.params.mu_hi},
                {"sigma_I", g.gmm.params.sigma_hi},  {"mu_P", g.gmm.params.mu_lo},
                {"sigma_P", g.gmm.params.sigma_lo},  {"log_likelihood", g.gmm.log_likelihood},
                {"iterations", g.gmm.n_iterations},  {"converged", g.gmm.converged},
                {"restart", g.gmm.restart}};
    o["ifi"] = {{"mu_s", g.ifi.mu}, {"scale_s", g.ifi.s}, {"std_s", g.ifi_stddev}};
    o["goodness"] = g.goodness;
    o["weight"] = g.weight;
    groups.push_back(std::move(o));
  }
  return j.dump(indent);
}

}  // namespace burstkit
