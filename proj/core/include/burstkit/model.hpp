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

#include <chrono>
#include <cstdint>
#include <string>

#include "burstkit/rng.hpp"
#include "burstkit/rv.hpp"

namespace burstkit {

/// Fitted constants of the VR traffic model.
///
/// Frame sizes follow a two-component Gaussian mixture whose parameters scale
/// with the mean frame size S (in bytes):
///   mu_I = s_I * S,       mu_P = s_P * S,
///   sigma_I = a_I * S^b_I, sigma_P = a_P * S^b_P.
///
/// NOTE: S is in bytes and the sigmas come out in bytes. Plots of these fits
/// are usually drawn in kB, but the coefficients below only reproduce them
/// with byte-valued S (a_P * 22836^b_P = 4795 B, not 4.795 kB from S=22.8).
///
/// Inter-frame intervals are Logistic with mean 1/F and standard deviation c/F.
struct VrModelConstants {
  double c = 0.0827;
  double s_I = 1.1764;
  double s_P = 0.9008;
  double a_I = 26.2065;
  double b_I = 0.5730;
  double a_P = 9.0399;
  double b_P = 0.6251;

  /// Throws ParameterError unless s_P <= 1 <= s_I, s_I != s_P, c >= 0, a_* >= 0.
  void validate() const;

  friend bool operator==(const VrModelConstants&, const VrModelConstants&) = default;
};

/// Per-stream configuration: target data rate R (bit/s) and frame rate F (fps).
struct VrStreamParams {
  double target_rate_bps = 50e6;
  double frame_rate = 60.0;

  /// Mean frame size S = R / (8 F), in bytes.
  double mean_frame_size() const noexcept { return target_rate_bps / (8.0 * frame_rate); }
  void validate() const;
};

struct MixtureWeights {
  double w_I;
  double w_P;
};

/// Weights that make the mixture mean equal S:
/// w_I = (1 - s_P) / (s_I - s_P), w_P = (s_I - 1) / (s_I - s_P).
/// Throws ParameterError unless s_P <= 1 <= s_I and s_I != s_P.
MixtureWeights derive_weights(double s_I, double s_P);

LogisticParams derive_ifi_model(const VrStreamParams& params, const VrModelConstants& k);
Gmm2Params derive_frame_size_model(const VrStreamParams& params, const VrModelConstants& k);

/// Frame size in whole bytes (>= 1). Non-positive mixture draws are rejected
/// and redrawn; 100 consecutive rejections throw ParameterError.
std::uint64_t sample_vr_frame(const Gmm2Params& frame_model, RngStream& rng);
std::uint64_t sample_vr_frame(const VrStreamParams& params, const VrModelConstants& k, RngStream& rng);

/// Inter-frame interval in seconds; negative logistic draws clamp to 0.
double sample_vr_ifi(const LogisticParams& ifi_model, RngStream& rng);
double sample_vr_ifi(const VrStreamParams& params, const VrModelConstants& k, RngStream& rng);

/// JSON parameter file shared with the fitting pipeline. Accepts either the
/// bare constants object or a document holding it under "constants"; missing
/// keys keep their defaults.
VrModelConstants constants_from_json(const std::string& text);
VrModelConstants load_constants(const std::string& path);
std::string constants_to_json(const VrModelConstants& k, int indent = 2);

}  // namespace burstkit
