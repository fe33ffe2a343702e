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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "burstkit/error.hpp"
#include "burstkit/fit.hpp"
#include "test_util.hpp"

namespace burstkit {
namespace {

using testing::rel_err;

std::vector<double> draw_gmm(const Gmm2Params& p, std::size_t n, RngStream& rng) {
  std::vector<double> out(n);
  for (auto& x : out) x = gmm2_sample(p, rng);
  return out;
}

// Per-group I-component means of a real capture set (S and means in kB).
const std::vector<Point2> kIMeansKb = {
    {43.9874105337722, 57.1603452983317},  {86.6873172136039, 111.200691584276},
    {129.63016392158, 156.203591402781},   {163.917705970245, 198.091152535039},
    {205.372193813957, 231.192662315705},  {22.8364064350911, 38.3364094872465},
    {43.8505278091716, 48.5009129460361},  {65.3801220246637, 75.5736656432016},
    {86.5618935662348, 105.512369058656},  {107.341414307637, 113.066754325084},
};

// P-component standard deviations of the same capture set (kB).
const std::vector<Point2> kPStdKb = {
    {43.9874105337722, 8.78062163105488}, {86.6873172136039, 10.7696212187506},
    {129.63016392158, 13.2905672687238},  {163.917705970245, 13.665482567833},
    {205.372193813957, 20.0809448204423}, {22.8364064350911, 4.46881019471742},
    {43.8505278091716, 7.27437177726914}, {65.3801220246637, 7.71319524919357},
    {86.5618935662348, 12.4129295174141}, {107.341414307637, 15.120497810535},
};

std::vector<Point2> to_bytes(const std::vector<Point2>& kb) {
  std::vector<Point2> out;
  for (auto p : kb) out.push_back({p.x * 1000, p.y * 1000});
  return out;
}

TEST(FitLogistic, ConstantSamples) {
  const std::vector<double> xs(100, 0.0333);
  const auto p = fit_logistic(xs);
  EXPECT_NEAR(p.mu, 0.0333, 1e-15);
  EXPECT_NEAR(p.s, 0.0, 1e-15);
}

TEST(FitLogistic, TwoSamples) {
  const std::vector<double> xs{0.0, 2.0};
  const auto p = fit_logistic(xs);
  EXPECT_DOUBLE_EQ(p.mu, 1.0);
  EXPECT_NEAR(p.s, 0.779696801233676108, 1e-15);
}

TEST(FitLogistic, RecoversSampledParameters) {
  const LogisticParams truth{1.0 / 30, 0.0015};
  RngStream rng(300, 0);
  std::vector<double> xs(1'000'000);
  for (auto& x : xs) x = logistic_sample(truth, rng);
  const auto p = fit_logistic(xs);
  EXPECT_LT(rel_err(p.mu, truth.mu), 0.005);
  EXPECT_LT(rel_err(p.s, truth.s), 0.02);
}

TEST(FitLogistic, TooFewSamples) {
  const std::vector<double> one{1.0};
  EXPECT_THROW(fit_logistic(one), InsufficientDataError);
  EXPECT_THROW(fit_logistic(std::span<const double>{}), InsufficientDataError);
}

TEST(FitGmm2Em, RecoversSeparatedMixture) {
  const Gmm2Params truth{0.36, 100000, 8000, 50000, 5000};
  RngStream data_rng(301, 0), fit_rng(301, 1);
  const auto xs = draw_gmm(truth, 50000, data_rng);
  const auto fit = fit_gmm2_em(xs, fit_rng, EmOptions{.restarts = 10});
  EXPECT_LT(rel_err(fit.params.mu_hi, 100000), 0.02);
  EXPECT_LT(rel_err(fit.params.mu_lo, 50000), 0.02);
  EXPECT_NEAR(fit.params.w_hi, 0.36, 0.02);
  EXPECT_LT(rel_err(fit.params.sigma_hi, 8000), 0.05);
  EXPECT_LT(rel_err(fit.params.sigma_lo, 5000), 0.05);
  EXPECT_TRUE(fit.converged);
  EXPECT_NEAR(fit.log_likelihood, gmm2_log_likelihood(xs, fit.params), 1e-6 * std::abs(fit.log_likelihood));
}

TEST(FitGmm2Em, LogLikelihoodNeverDecreases) {
  const Gmm2Params truth{0.36, 120000, 15000, 90000, 12000};  // heavily overlapping
  RngStream data_rng(302, 0), fit_rng(302, 1);
  const auto xs = draw_gmm(truth, 5000, data_rng);
  std::vector<std::vector<double>> traces(8);
  EmOptions opt{.restarts = 8, .max_iter = 200};
  opt.on_iteration = [&](int r, int, double ll) { traces.at(static_cast<std::size_t>(r)).push_back(ll); };
  fit_gmm2_em(xs, fit_rng, opt);
  for (const auto& t : traces) {
    ASSERT_GE(t.size(), 2u);
    for (std::size_t i = 1; i < t.size(); ++i) {
      ASSERT_GE(t[i], t[i - 1] - 1e-9 * std::abs(t[i - 1])) << "iteration " << i;
    }
  }
}

TEST(FitGmm2Em, SingleNormalKeepsFirstMoment) {
  RngStream data_rng(303, 0), fit_rng(303, 1);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = data_rng.normal(50000, 4000);
  const auto fit = fit_gmm2_em(xs, fit_rng, EmOptions{.restarts = 5});
  EXPECT_LT(rel_err(fit.params.mean(), testing::stats_of(xs).mean), 0.01);
  EXPECT_GE(fit.params.mu_hi, fit.params.mu_lo);
}

TEST(FitGmm2Em, SingleComponentLimit) {
  const Gmm2Params truth{1.0, 80000, 6000, 0, 1};
  RngStream data_rng(304, 0), fit_rng(304, 1);
  const auto xs = draw_gmm(truth, 20000, data_rng);
  const auto fit = fit_gmm2_em(xs, fit_rng, EmOptions{.restarts = 5});
  EXPECT_LT(rel_err(fit.params.mean(), 80000), 0.01);
}

TEST(FitGmm2Em, DeterministicForSeed) {
  const Gmm2Params truth{0.3, 10, 1, 5, 1};
  RngStream data_rng(305, 0);
  const auto xs = draw_gmm(truth, 2000, data_rng);
  RngStream a(9, 9), b(9, 9);
  const auto fa = fit_gmm2_em(xs, a, EmOptions{.restarts = 4});
  const auto fb = fit_gmm2_em(xs, b, EmOptions{.restarts = 4});
  EXPECT_EQ(fa.log_likelihood, fb.log_likelihood);
  EXPECT_EQ(fa.restart, fb.restart);
  EXPECT_EQ(fa.params.mu_hi, fb.params.mu_hi);
}

TEST(FitGmm2Em, Errors) {
  RngStream rng(1, 1);
  const std::vector<double> few{1, 2, 3, 4, 5, 6, 7, 8, 9};
  EXPECT_THROW(fit_gmm2_em(few, rng), InsufficientDataError);
  const std::vector<double> flat(100, 3.0);
  EXPECT_THROW(fit_gmm2_em(flat, rng), InsufficientDataError);
}

TEST(LinearThroughOrigin, NoiselessIsExact) {
  std::vector<Point2> pts;
  for (double x : {1e4, 2.5e4, 7e4, 1.3e5, 2e5}) pts.push_back({x, 1.1764 * x});
  EXPECT_LT(rel_err(fit_linear_through_origin(pts), 1.1764), 1e-12);
  const std::vector<double> w{0.1, 0.2, 0.3, 0.2, 0.2};
  EXPECT_LT(rel_err(fit_linear_through_origin(pts, w), 1.1764), 1e-12);
}

TEST(LinearThroughOrigin, SinglePoint) {
  const std::vector<Point2> pts{{2, 3}};
  EXPECT_DOUBLE_EQ(fit_linear_through_origin(pts), 1.5);
}

TEST(LinearThroughOrigin, WeightsFormula) {
  const std::vector<Point2> pts{{1, 2}, {2, 2}};
  const std::vector<double> w{3, 1};
  // (3*1*2 + 1*2*2) / (3*1 + 1*4) = 10/7
  EXPECT_DOUBLE_EQ(fit_linear_through_origin(pts, w), 10.0 / 7.0);
}

TEST(LinearThroughOrigin, CapturedIMeans) {
  const auto slope = fit_linear_through_origin(to_bytes(kIMeansKb));
  EXPECT_NEAR(slope, 1.16965, 1e-4);
  EXPECT_NEAR(slope, 1.1764, 0.02);
}

TEST(LinearThroughOrigin, Errors) {
  const std::vector<Point2> zeros{{0, 1}, {0, 2}};
  EXPECT_THROW(fit_linear_through_origin(zeros), InsufficientDataError);
  EXPECT_THROW(fit_linear_through_origin(std::span<const Point2>{}), InsufficientDataError);
  const std::vector<Point2> pts{{1, 1}};
  const std::vector<double> w{1, 1};
  EXPECT_THROW(fit_linear_through_origin(pts, w), ParameterError);
}

TEST(PowerLaw, NoiselessRecovery) {
  std::vector<Point2> pts;
  for (double x : {2e4, 4e4, 8e4, 1.2e5, 2e5}) pts.push_back({x, 9.0399 * std::pow(x, 0.6251)});
  const auto f = fit_power_law(pts);
  EXPECT_LT(rel_err(f.a, 9.0399), 1e-9);
  EXPECT_LT(rel_err(f.b, 0.6251), 1e-9);
  EXPECT_DOUBLE_EQ(f(1.0), f.a);
}

TEST(PowerLaw, ConstantData) {
  const std::vector<Point2> pts{{1, 7}, {10, 7}, {100, 7}};
  const auto f = fit_power_law(pts);
  EXPECT_NEAR(f.b, 0.0, 1e-12);
  EXPECT_NEAR(f.a, 7.0, 1e-12);
}

// The captured P-component sigmas give an exponent close to the default b_P
// and a curve that runs through the default curve at both ends of the data.
// The prefactor is the curve's value at S = 1 B, far outside the data, so it
// lands 14% above the default a_P even though the curves agree; it is checked
// against an independent log-OLS evaluation instead.
TEST(PowerLaw, CapturedPSigmas) {
  const auto f = fit_power_law(to_bytes(kPStdKb));
  EXPECT_NEAR(f.b, 0.61408, 1e-4);
  EXPECT_NEAR(f.a, 10.274, 1e-2);
  EXPECT_NEAR(f.b, 0.6251, 0.1 * 0.6251);
  EXPECT_LT(rel_err(f(22836.4064350911), 4795.07494815927), 0.1);
  EXPECT_LT(rel_err(f(205372.193813957), 18927.7190020939), 0.1);
}

TEST(PowerLaw, Errors) {
  const std::vector<Point2> neg{{1, 1}, {-2, 3}};
  EXPECT_THROW(fit_power_law(neg), ParameterError);
  const std::vector<Point2> zero_y{{1, 0}, {2, 3}};
  EXPECT_THROW(fit_power_law(zero_y), ParameterError);
  const std::vector<Point2> same_x{{5, 1}, {5, 3}};
  EXPECT_THROW(fit_power_law(same_x), InsufficientDataError);
  const std::vector<Point2> one{{5, 1}};
  EXPECT_THROW(fit_power_law(one), InsufficientDataError);
}

TraceGroup synth_group(double rate, double fps, std::size_t n, std::uint64_t seed) {
  const VrStreamParams params{rate, fps};
  const VrModelConstants k;
  RngStream rng(seed, 0);
  TraceGroup g;
  g.label = std::to_string(static_cast<int>(rate / 1e6)) + "Mbps_" + std::to_string(static_cast<int>(fps)) + "fps";
  g.target_rate_bps = rate;
  g.frame_rate = fps;
  const auto frame = derive_frame_size_model(params, k);
  const auto ifi = derive_ifi_model(params, k);
  for (std::size_t i = 0; i < n; ++i) {
    g.frame_sizes.push_back(static_cast<double>(sample_vr_frame(frame, rng)));
    g.ifis.push_back(sample_vr_ifi(ifi, rng));
  }
  return g;
}

TEST(FitVrModel, ClosedLoopMixtureMean) {
  std::vector<TraceGroup> groups;
  std::uint64_t seed = 400;
  for (double rate : {10e6, 30e6, 50e6}) {
    for (double fps : {30.0, 60.0}) groups.push_back(synth_group(rate, fps, 20000, seed++));
  }
  RngStream rng(401, 0);
  const auto report = fit_vr_model(groups, rng, FitOptions{.em = EmOptions{.restarts = 5}});
  ASSERT_EQ(report.groups.size(), groups.size());
  double wsum = 0.0;
  for (const auto& g : report.groups) {
    const double S = VrStreamParams{g.target_rate_bps, g.frame_rate}.mean_frame_size();
    EXPECT_LT(rel_err(g.gmm.params.mean(), S), 0.01) << g.label;
    EXPECT_LT(rel_err(g.empirical_mean_size, S), 0.01) << g.label;
    EXPECT_GE(g.gmm.params.mu_hi, g.gmm.params.mu_lo);
    wsum += g.weight;
  }
  EXPECT_NEAR(wsum, 1.0, 1e-12);
  EXPECT_LT(rel_err(report.constants.c, 0.0827), 0.03);
  const auto json = fit_report_to_json(report);
  EXPECT_NE(json.find("\"constants\""), std::string::npos);
  EXPECT_NO_THROW(constants_from_json(json));
}

TEST(FitVrModel, UniformWeights) {
  std::vector<TraceGroup> groups{synth_group(20e6, 30, 3000, 1), synth_group(40e6, 30, 3000, 2),
                                 synth_group(40e6, 60, 3000, 3)};
  RngStream rng(402, 0);
  const auto report = fit_vr_model(groups, rng, FitOptions{.em = EmOptions{.restarts = 3}, .uniform_weights = true});
  for (const auto& g : report.groups) EXPECT_DOUBLE_EQ(g.weight, 1.0 / 3.0);
}

TEST(FitVrModel, Errors) {
  RngStream rng(403, 0);
  const std::vector<TraceGroup> one{synth_group(20e6, 30, 500, 1)};
  EXPECT_THROW(fit_vr_model(one, rng), InsufficientDataError);
  // The regressor is the empirical mean size, so identical data gives identical S.
  auto twin = synth_group(20e6, 30, 500, 1);
  twin.label = "twin";
  const std::vector<TraceGroup> same_s{synth_group(20e6, 30, 500, 1), twin};
  EXPECT_THROW(fit_vr_model(same_s, rng, FitOptions{.em = EmOptions{.restarts = 2}}), InsufficientDataError);
}

TEST(GroupFromTrace, ReadsMetadata) {
  TraceFile t;
  t.metadata["fps"] = "60";
  t.metadata["target_rate_mbps"] = "50";
  t.records = {{1000, std::chrono::microseconds(16667)}, {2000, std::chrono::microseconds(16666)}};
  const auto g = group_from_trace(t, "x");
  EXPECT_DOUBLE_EQ(g.frame_rate, 60.0);
  EXPECT_DOUBLE_EQ(g.target_rate_bps, 50e6);
  EXPECT_EQ(g.frame_sizes, (std::vector<double>{1000, 2000}));
  ASSERT_EQ(g.ifis.size(), 2u);
  EXPECT_DOUBLE_EQ(g.ifis[0], 0.016667);
  const auto h = group_from_trace(t, "y", 20e6, 30);
  EXPECT_DOUBLE_EQ(h.frame_rate, 30.0);
}

}  // namespace
}  // namespace burstkit
