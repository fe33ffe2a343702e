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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "burstkit/model.hpp"
#include "burstkit/rng.hpp"
#include "burstkit/rv.hpp"
#include "burstkit/trace.hpp"

namespace burstkit {

/// Moment matching: mu = sample mean, s = sample std (n-1) * sqrt(3) / pi.
/// Throws InsufficientDataError for fewer than two samples.
LogisticParams fit_logistic(std::span<const double> samples);

struct EmOptions {
  int restarts = 50;
  int max_iter = 500;
  /// Stop once the mean per-sample log-likelihood improves by less than this.
  double tol = 1e-8;
  /// Called after every EM iteration with (restart, iteration, total log-likelihood).
  /// Iteration 0 reports the initial parameters.
  std::function<void(int, int, double)> on_iteration;
};

struct Gmm2Fit {
  Gmm2Params params;  // mu_hi >= mu_lo always
  double log_likelihood = 0.0;
  int n_iterations = 0;
  bool converged = false;
  int restart = 0;  // index of the winning restart
};

/// Two-component univariate Gaussian mixture by EM with random restarts.
///
/// Each restart starts from two distinct samples as means, the sample std as
/// both sigmas and equal weights. Sigmas are floored at 1e-6 * sample std.
/// The restart with the highest log-likelihood wins (ties go to the lower
/// index). All random draws happen up front, so the result does not depend on
/// the order in which restarts are evaluated.
///
/// Throws InsufficientDataError for fewer than 10 samples or zero variance.
Gmm2Fit fit_gmm2_em(std::span<const double> samples, RngStream& rng, const EmOptions& options = {});

/// Log-likelihood of samples under a mixture.
double gmm2_log_likelihood(std::span<const double> samples, const Gmm2Params& p);

struct Point2 {
  double x;
  double y;
};

/// Weighted least squares through the origin: sum(w x y) / sum(w x^2).
/// Empty weights mean uniform. Throws InsufficientDataError when every x is 0.
double fit_linear_through_origin(std::span<const Point2> points, std::span<const double> weights = {});

struct PowerLaw {
  double a;
  double b;
  double operator()(double x) const;
};

/// y = a * x^b by (weighted) least squares on (ln x, ln y).
/// Throws ParameterError for non-positive coordinates and
/// InsufficientDataError for fewer than two distinct abscissae.
PowerLaw fit_power_law(std::span<const Point2> points, std::span<const double> weights = {});

/// Frame sizes and inter-frame intervals of one (target rate, frame rate) acquisition.
struct TraceGroup {
  std::string label;
  double target_rate_bps = 0.0;
  double frame_rate = 0.0;
  std::vector<double> frame_sizes;  // bytes
  std::vector<double> ifis;         // seconds
};

/// Builds a group from a trace whose metadata carries "fps" and
/// "target_rate_mbps"; explicit non-zero arguments override the metadata.
TraceGroup group_from_trace(const TraceFile& trace, std::string label, double target_rate_bps = 0.0,
                            double frame_rate = 0.0);

struct GroupFit {
  std::string label;
  double target_rate_bps = 0.0;
  double frame_rate = 0.0;
  double empirical_mean_size = 0.0;  // S used as the regressor
  std::size_t n_frames = 0;
  Gmm2Fit gmm;
  LogisticParams ifi;
  double ifi_stddev = 0.0;
  double goodness = 0.0;  // mean log-likelihood of sizes / S
  double weight = 0.0;    // regression weight, sums to 1 over groups
};

struct FitOptions {
  EmOptions em;
  /// Equal regression weights instead of goodness-rank weights.
  bool uniform_weights = false;
};

struct FitReport {
  std::vector<GroupFit> groups;
  VrModelConstants constants;
  bool valid = true;  // false when the pooled slopes violate s_P <= 1 <= s_I
  std::string invalid_reason;
};

/// Fits every group and pools the results into model constants:
///   c          mean over groups of IFI std * F
///   s_I, s_P   weighted through-origin fits of the component means against S
///   a_*, b_*   weighted power-law fits of the component sigmas against S
/// Regression weights are proportional to the rank of each group's goodness
/// (worst = 1, best = K) unless options.uniform_weights is set.
///
/// Throws InsufficientDataError with fewer than two groups or fewer than two
/// distinct S values.
FitReport fit_vr_model(std::span<const TraceGroup> groups, RngStream& rng, const FitOptions& options = {});

std::string fit_report_to_json(const FitReport& report, int indent = 2);

}  // namespace burstkit
