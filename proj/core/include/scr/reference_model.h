// Copyright 2026 The SCR Codec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCR_REFERENCE_MODEL_H_
#define SCR_REFERENCE_MODEL_H_

#include <cstdint>

#include "scr/weights.h"

namespace scr {

// Layer widths of the toy architecture:
//   encoder        3x conv k5 s2 (leaky, leaky, none)      3 -> N -> N -> C_y
//   decoder        3x (upsample 2, conv k5) (leaky, leaky, none)
//   hyper encoder  2x conv k3 s2 (leaky, none)             C_y -> N -> C_z
//   hyper decoder  2x (upsample 2, conv k3, leaky), conv k3 -> 2*C_y
//   importance     conv 1x1 C_hd -> C_y; baseline 2D head C_hd -> N_Q
struct ReferenceConfig {
  int latent_channels = 32;
  int hyper_channels = 8;
  int hidden_channels = 16;
  int hyper_feature_channels = 32;
  int levels = 8;
  // Target selection ratios of the deterministic mask at q = 1 and q = N_Q
  // on the calibration images; intermediate levels are geometric.
  double ratio_low = 0.05;
  double ratio_high = 0.65;
  // Quantization step at q = N_Q; each level below doubles it every 2 steps.
  double qv_high = 0.1;
  std::uint64_t seed = 20260101;
};

// Builds a seeded pseudo-random model calibrated on synthetic images so that
// latent scales, the hyper prior, the importance map and the per-level
// vectors all sit in sensible ranges. Vectors are monotone in q per channel:
// gamma and qv decrease with q. Deterministic for a given config.
WeightContainer MakeReferenceWeights(const ReferenceConfig& config = {});

// Same architecture with every weight, bias and vector set to neutral
// values (kernels and biases 0, vectors 1).
WeightContainer MakeZeroWeights(const ReferenceConfig& config = {});

}  // namespace scr

#endif  // SCR_REFERENCE_MODEL_H_
