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

#include "burstkit/rv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

void require_positive_scale(const LogisticParams& p) {
  if (!(p.s > 0.0) || !std::isfinite(p.s)) {
    throw ParameterError("logistic scale must be positive, got " + std::to_string(p.s));
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view token, std::string_view context) {
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty()) {
    throw ParameterError("invalid number '" + std::string(token) + "' in variate '" + std::string(context) + "'");
  }
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

double LogisticParams::stddev() const noexcept { return s * std::numbers::pi / kSqrt3; }

double LogisticParams::scale_for_stddev(double stddev) noexcept { return stddev * kSqrt3 / std::numbers::pi; }

double logistic_pdf(double x, const LogisticParams& p) {
  require_positive_scale(p);
  // Symmetric about mu, so evaluate with a non-positive exponent.
  const double e = std::exp(-std::abs((x - p.mu) / p.s));
  return e / (p.s * (1.0 + e) * (1.0 + e));
}

double logistic_cdf(double x, const LogisticParams& p) {
  require_positive_scale(p);
  const double z = (x - p.mu) / p.s;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_quantile(double u, const LogisticParams& p) {
  require_positive_scale(p);
  if (!(u > 0.0 && u < 1.0)) {
    throw ParameterError("logistic quantile requires 0 < u < 1, got " + std::to_string(u));
  }
  return p.mu + p.s * (std::log(u) - std::log1p(-u));
}

double logistic_sample(const LogisticParams& p, RngStream& rng) {
  const double u = rng.uniform_open();
  if (p.s == 0.0) return p.mu;
  return logistic_quantile(u, p);
}

void Gmm2Params::validate() const {
  if (!(w_hi >= 0.0 && w_hi <= 1.0)) throw ParameterError("mixture weight must lie in [0,1]");
  if (!(sigma_hi >= 0.0) || !(sigma_lo >= 0.0)) throw ParameterError("mixture sigmas must be non-negative");
  if (!(mu_hi >= mu_lo)) throw ParameterError("mixture requires mu_hi >= mu_lo");
}

Gmm2Draw gmm2_draw(const Gmm2Params& p, RngStream& rng) {
  const bool hi = rng.uniform() < p.w_hi;
  const double v = hi ? rng.normal(p.mu_hi, p.sigma_hi) : rng.normal(p.mu_lo, p.sigma_lo);
  return {v, hi};
}

EmpiricalCdf::EmpiricalCdf(std::vector<Point> points, bool interpolate)
    : points_(std::move(points)), interpolate_(interpolate) {
  if (points_.empty()) throw ParameterError("empirical CDF needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& pt = points_[i];
    if (!std::isfinite(pt.value) || !(pt.cum_prob >= 0.0 && pt.cum_prob <= 1.0)) {
      throw ParameterError("empirical CDF point " + std::to_string(i) + " out of range");
    }
    if (i > 0) {
      if (!(pt.cum_prob > points_[i - 1].cum_prob)) {
        throw ParameterError("empirical CDF probabilities must be strictly increasing");
      }
      if (pt.value < points_[i - 1].value) throw ParameterError("empirical CDF values must be sorted");
    }
  }
  if (std::abs(points_.back().cum_prob - 1.0) > 1e-12) {
    throw ParameterError("empirical CDF must end at cumulative probability 1");
  }
}

double EmpiricalCdf::quantile(double u) const {
  if (u <= points_.front().cum_prob) return points_.front().value;
  const auto it = std::lower_bound(points_.begin(), points_.end(), u,
                                   [](const Point& pt, double q) { return pt.cum_prob < q; });
  if (it == points_.end()) return points_.back().value;
  if (!interpolate_) return it->value;
  const auto& lo = *(it - 1);
  const double t = (u - lo.cum_prob) / (it->cum_prob - lo.cum_prob);
  return lo.value + t * (it->value - lo.value);
}

double sample(const Variate& v, RngStream& rng) {
  return std::visit(
      overloaded{
          [](const variate::Constant& c) { return c.value; },
          [&](const variate::Uniform& u) { return rng.uniform(u.lo, u.hi); },
          [&](const variate::Normal& n) { return rng.normal(n.mean, n.stddev); },
          [&](const variate::Exponential& e) { return -e.mean * std::log(rng.uniform_open()); },
          [&](const variate::Logistic& l) { return logistic_sample(l.params, rng); },
          [&](const variate::Empirical& e) { return e.cdf.sample(rng); },
      },
      v);
}

double variate_mean(const Variate& v) {
  return std::visit(overloaded{
                        [](const variate::Constant& c) { return c.value; },
                        [](const variate::Uniform& u) { return 0.5 * (u.lo + u.hi); },
                        [](const variate::Normal& n) { return n.mean; },
                        [](const variate::Exponential& e) { return e.mean; },
                        [](const variate::Logistic& l) { return l.params.mu; },
                        [](const variate::Empirical& e) {
                          // Exact mean of the piecewise-linear (or staircase) quantile function.
                          const auto& pts = e.cdf.points();
                          double m = pts.front().value * pts.front().cum_prob;
                          for (std::size_t i = 1; i < pts.size(); ++i) {
                            const double dp = pts[i].cum_prob - pts[i - 1].cum_prob;
                            m += dp * (e.cdf.interpolates() ? 0.5 * (pts[i].value + pts[i - 1].value) : pts[i].value);
                          }
                          return m;
                        },
                    },
                    v);
}

Variate parse_variate(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("variate '" + std::string(text) + "' must look like kind:args");
  }
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  const auto args = split(rest, ':');
  auto expect = [&](std::size_t n) {
    if (args.size() != n) {
      throw ParameterError("variate '" + std::string(text) + "' expects " + std::to_string(n) + " argument(s)");
    }
  };
  if (kind == "const") {
    expect(1);
    return variate::Constant{parse_number(args[0], text)};
  }
  if (kind == "uniform") {
    expect(2);
    const double lo = parse_number(args[0], text), hi = parse_number(args[1], text);
    if (!(lo <= hi)) throw ParameterError("uniform variate requires lo <= hi");
    return variate::Uniform{lo, hi};
  }
  if (kind == "normal") {
    expect(2);
    const double sd = parse_number(args[1], text);
    if (!(sd >= 0.0)) throw ParameterError("normal variate requires stddev >= 0");
    return variate::Normal{parse_number(args[0], text), sd};
  }
  if (kind == "exp") {
    expect(1);
    const double m = parse_number(args[0], text);
    if (!(m > 0.0)) throw ParameterError("exponential variate requires mean > 0");
    return variate::Exponential{m};
  }
  if (kind == "logistic") {
    expect(2);
    const double s = parse_number(args[1], text);
    if (!(s >= 0.0)) throw ParameterError("logistic variate requires scale >= 0");
    return variate::Logistic{{parse_number(args[0], text), s}};
  }
  if (kind == "empirical" || kind == "discrete") {
    std::vector<EmpiricalCdf::Point> pts;
    for (auto item : split(rest, ',')) {
      const auto at = item.find('@');
      if (at == std::string_view::npos) throw ParameterError("empirical point '" + std::string(item) + "' must be V@P");
      pts.push_back({parse_number(item.substr(0, at), text), parse_number(item.substr(at + 1), text)});
    }
    return variate::Empirical{EmpiricalCdf(std::move(pts), kind == "empirical")};
  }
  throw ParameterError("unknown variate kind '" + std::string(kind) + "'");
}

std::string to_string(const Variate& v) {
  return std::visit(
      overloaded{
          [](const variate::Constant& c) { return "const:" + format_number(c.value); },
          [](const variate::Uniform& u) { return "uniform:" + format_number(u.lo) + ":" + format_number(u.hi); },
          [](const variate::Normal& n) { return "normal:" + format_number(n.mean) + ":" + format_number(n.stddev); },
          [](const variate::Exponential& e) { return "exp:" + format_number(e.mean); },
          [](const variate::Logistic& l) {
            return "logistic:" + format_number(l.params.mu) + ":" + format_number(l.params.s);
          },
          [](const variate::Empirical& e) {
            std::ostringstream os;
            os << (e.cdf.interpolates() ? "empirical:" : "discrete:");
            bool first = true;
            for (const auto& pt : e.cdf.points()) {
              os << (first ? "" : ",") << format_number(pt.value) << '@' << format_number(pt.cum_prob);
              first = false;
            }
            return os.str();
          },
      },
      v);
}

}  // namespace burstkit
