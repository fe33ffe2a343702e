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

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "burstkit/rng.hpp"

namespace burstkit {

/// Logistic(mu, s): mean mu, standard deviation s*pi/sqrt(3). Units are
/// whatever the caller uses (seconds for inter-frame intervals).
struct LogisticParams {
  double mu = 0.0;
  double s = 1.0;

  double mean() const noexcept { return mu; }
  double stddev() const noexcept;
  /// Scale that yields the given standard deviation.
  static double scale_for_stddev(double stddev) noexcept;
};

double logistic_pdf(double x, const LogisticParams& p);
double logistic_cdf(double x, const LogisticParams& p);
/// Inverse CDF: mu + s*ln(u/(1-u)). Throws ParameterError unless 0 < u < 1.
double logistic_quantile(double u, const LogisticParams& p);
/// Inverse-transform draw; consumes one uniform. s == 0 returns mu exactly.
double logistic_sample(const LogisticParams& p, RngStream& rng);

/// Two-component univariate Gaussian mixture. The "hi" component has the
/// larger mean and is selected with probability w_hi.
struct Gmm2Params {
  double w_hi = 0.5;
  double mu_hi = 0.0;
  double sigma_hi = 1.0;
  double mu_lo = 0.0;
  double sigma_lo = 1.0;

  double w_lo() const noexcept { return 1.0 - w_hi; }
  double mean() const noexcept { return w_hi * mu_hi + w_lo() * mu_lo; }
  /// Throws ParameterError on weights outside [0,1], negative sigmas or mu_hi < mu_lo.
  void validate() const;
};

struct Gmm2Draw {
  double value;
  bool from_hi;
};

/// One uniform picks the component, then one normal (two uniforms) is drawn
/// from it, so every call consumes exactly three uniforms.
Gmm2Draw gmm2_draw(const Gmm2Params& p, RngStream& rng);
inline double gmm2_sample(const Gmm2Params& p, RngStream& rng) { return gmm2_draw(p, rng).value; }

/// Piecewise CDF given as (value, cumulative probability) points.
class EmpiricalCdf {
 public:
  struct Point {
    double value;
    double cum_prob;
  };

  /// Points must have strictly increasing cum_prob in (0, 1] ending at 1 and
  /// non-decreasing values; otherwise throws ParameterError.
  /// With interpolate=false the CDF is a staircase (discrete values only).
  explicit EmpiricalCdf(std::vector<Point> points, bool interpolate = true);

  /// Maps u in [0,1) to a value: u <= first cum_prob yields the first value,
  /// otherwise linear interpolation (or the next step) between neighbours.
  double quantile(double u) const;
  double sample(RngStream& rng) const { return quantile(rng.uniform()); }

  const std::vector<Point>& points() const noexcept { return points_; }
  bool interpolates() const noexcept { return interpolate_; }

 private:
  std::vector<Point> points_;
  bool interpolate_;
};

inline double empirical_cdf_sample(const EmpiricalCdf& cdf, RngStream& rng) { return cdf.sample(rng); }

// Variate descriptions used by the simple generator and the CLI.
namespace variate {
struct Constant {
  double value;
};
struct Uniform {
  double lo, hi;
};
struct Normal {
  double mean, stddev;
};
struct Exponential {
  double mean;
};
struct Logistic {
  LogisticParams params;
};
struct Empirical {
  EmpiricalCdf cdf;
};
}  // namespace variate

using Variate = std::variant<variate::Constant, variate::Uniform, variate::Normal, variate::Exponential,
                             variate::Logistic, variate::Empirical>;

double sample(const Variate& v, RngStream& rng);
double variate_mean(const Variate& v);

/// Parses "const:V", "uniform:LO:HI", "normal:MEAN:STD", "exp:MEAN",
/// "logistic:MU:S", "empirical:V1@P1,V2@P2,..." (interpolated) and
/// "discrete:V1@P1,..." (staircase). Throws ParameterError.
Variate parse_variate(std::string_view text);
std::string to_string(const Variate& v);

}  // namespace burstkit
