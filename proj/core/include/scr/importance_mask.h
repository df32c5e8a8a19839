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

#ifndef SCR_IMPORTANCE_MASK_H_
#define SCR_IMPORTANCE_MASK_H_

#include <cstdint>

#include "scr/conv.h"
#include "scr/tensor.h"

namespace scr {

// Per-element importance in [0, 1], shaped like the latent.
class ImportanceMap {
 public:
  ImportanceMap() = default;
  // Throws kInvalidArgument if any value lies outside [0, 1].
  explicit ImportanceMap(Tensor3 values);

  const Tensor3& values() const { return values_; }
  const Shape3& shape() const { return values_.shape(); }

 private:
  Tensor3 values_;
};

struct MaskMode {
  enum class Kind : std::uint8_t {
    kDeterministic = 0,  // round the adjusted map
    kStochastic = 1,     // Bernoulli(adjusted value), seeded
    kBaseline2d = 2,     // spatial importance, channels taken in order
    kAllOnes = 3,        // every element selected (control runs)
  };

  Kind kind = Kind::kDeterministic;
  std::uint64_t seed = 0;

  static MaskMode Deterministic() { return {Kind::kDeterministic, 0}; }
  static MaskMode Stochastic(std::uint64_t seed) {
    return {Kind::kStochastic, seed};
  }
  static MaskMode Baseline2d() { return {Kind::kBaseline2d, 0}; }
  static MaskMode AllOnes() { return {Kind::kAllOnes, 0}; }

  bool operator==(const MaskMode&) const = default;
};

const char* MaskModeName(MaskMode::Kind kind);

// clip(conv1x1(features) + bias, 0, 1). The head must be a 1x1 kernel.
ImportanceMap ImportanceHead(const Tensor3& hyper_features,
                             const ConvLayerParams& head);

// Raises channel c to the power gamma[c]. 0^gamma is 0 for every gamma > 0.
ImportanceMap Adjust(const ImportanceMap& im, const ChannelVector& gamma);

// 1 iff value >= 0.5.
BinaryMask Binarize(const ImportanceMap& adjusted);

// Element i is 1 with probability adjusted[i]: round(a + u) with
// u ~ U(-0.5, 0.5), drawn in row-major order from DeterministicRng(seed).
BinaryMask StochasticBinarize(const ImportanceMap& adjusted,
                              std::uint64_t seed);

// im2d has shape (1, H, W). At each position the first
// round(im2d * channels) channels (clamped to [0, channels]) are selected.
BinaryMask MaskFrom2dImportance(const Tensor3& im2d, int channels);

// popcount / size.
double SelectionRatio(const BinaryMask& mask);

// |lo & hi| / |lo|; 1.0 when lo is empty.
double ReuseRatio(const BinaryMask& mask_lo, const BinaryMask& mask_hi);

}  // namespace scr

#endif  // SCR_IMPORTANCE_MASK_H_
