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

#include "burstkit/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "burstkit/error.hpp"

namespace burstkit {

namespace {
constexpr int kMaxFrameRejections = 100;
}

void VrModelConstants::validate() const {
  derive_weights(s_I, s_P);
  if (!(c >= 0.0)) throw ParameterError("IFI coefficient c must be non-negative");
  if (!(a_I >= 0.0 && a_P >= 0.0)) throw ParameterError("power-law coefficients must be non-negative");
  if (!std::isfinite(b_I) || !std::isfinite(b_P)) throw ParameterError("power-law exponents must be finite");
}

void VrStreamParams::validate() const {
  if (!(target_rate_bps > 0.0) || !std::isfinite(target_rate_bps)) {
    throw ParameterError("target rate must be positive");
  }
  if (!(frame_rate > 0.0) || !std::isfinite(frame_rate)) throw ParameterError("frame rate must be positive");
}

MixtureWeights derive_weights(double s_I, double s_P) {
  if (s_I == s_P) throw ParameterError("degenerate mixture: s_I equals s_P");
  if (!(s_P <= 1.0 && 1.0 <= s_I)) {
    throw ParameterError("invalid slopes: need s_P <= 1 <= s_I (s_P=" + std::to_string(s_P) +
                         ", s_I=" + std::to_string(s_I) + ")");
  }
  const double span = s_I - s_P;
  return {(1.0 - s_P) / span, (s_I - 1.0) / span};
}

LogisticParams derive_ifi_model(const VrStreamParams& params, const VrModelConstants& k) {
  params.validate();
  const double stddev = k.c / params.frame_rate;
  return {1.0 / params.frame_rate, LogisticParams::scale_for_stddev(stddev)};
}

Gmm2Params derive_frame_size_model(const VrStreamParams& params, const VrModelConstants& k) {
  params.validate();
  const auto w = derive_weights(k.s_I, k.s_P);
  const double S = params.mean_frame_size();
  Gmm2Params g;
  g.w_hi = w.w_I;
  g.mu_hi = k.s_I * S;
  g.mu_lo = k.s_P * S;
  g.sigma_hi = k.a_I * std::pow(S, k.b_I);
  g.sigma_lo = k.a_P * std::pow(S, k.b_P);
  return g;
}

std::uint64_t sample_vr_frame(const Gmm2Params& frame_model, RngStream& rng) {
  for (int attempt = 0; attempt < kMaxFrameRejections; ++attempt) {
    const double v = gmm2_sample(frame_model, rng);
    if (v > 0.0) {
      const double rounded = std::round(v);
      return rounded < 1.0 ? 1 : static_cast<std::uint64_t>(rounded);
    }
  }
  throw ParameterError("degenerate frame-size model: " + std::to_string(kMaxFrameRejections) +
                       " consecutive non-positive draws");
}

std::uint64_t sample_vr_frame(const VrStreamParams& params, const VrModelConstants& k, RngStream& rng) {
  return sample_vr_frame(derive_frame_size_model(params, k), rng);
}

double sample_vr_ifi(const LogisticParams& ifi_model, RngStream& rng) {
  const double v = logistic_sample(ifi_model, rng);
  return v < 0.0 ? 0.0 : v;
}

double sample_vr_ifi(const VrStreamParams& params, const VrModelConstants& k, RngStream& rng) {
  return sample_vr_ifi(derive_ifi_model(params, k), rng);
}

VrModelConstants constants_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("constants JSON: ") + e.what());
  }
  const auto& obj = doc.contains("constants") ? doc.at("constants") : doc;
  if (!obj.is_object()) throw ParseError("constants JSON must be an object");
  VrModelConstants k;
  auto read = [&](const char* key, double& field) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number()) throw ParseError(std::string("constants JSON: '") + key + "' must be a number");
    field = obj.at(key).get<double>();
  };
  read("c", k.c);
  read("s_I", k.s_I);
  read("s_P", k.s_P);
  read("a_I", k.a_I);
  read("b_I", k.b_I);
  read("a_P", k.a_P);
  read("b_P", k.b_P);
  k.validate();
  return k;
}

VrModelConstants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open constants file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return constants_from_json(ss.str());
}

std::string constants_to_json(const VrModelConstants& k, int indent) {
  nlohmann::ordered_json j;
  j["c"] = k.c;
  j["s_I"] = k.s_I;
  j["s_P"] = k.s_P;
  j["a_I"] = k.a_I;
  j["b_I"] = k.b_I;
  j["a_P"] = k.a_P;
  j["b_P"] = k.b_P;
  return j.dump(indent);
}

}  // namespace burstkit
