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

#include "scr/importance_mask.h"

#include <algorithm>
#include <cmath>

#include "scr/errors.h"
#include "scr/random.h"

namespace scr {

const char* MaskModeName(MaskMode::Kind kind) {
  switch (kind) {
    case MaskMode::Kind::kDeterministic: return "det";
    case MaskMode::Kind::kStochastic: return "stoch";
    case MaskMode::Kind::kBaseline2d: return "2d";
    case MaskMode::Kind::kAllOnes: return "full";
  }
  return "unknown";
}

ImportanceMap::ImportanceMap(Tensor3 values) : values_(std::move(values)) {
  for (double v : values_.data()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "importance value outside [0, 1]");
    }
  }
}

ImportanceMap ImportanceHead(const Tensor3& hyper_features,
                             const ConvLayerParams& head) {
  if (head.kernel_h != 1 || head.kernel_w != 1 || head.stride != 1 ||
      head.upsample != 1) {
    throw Error(ErrorCode::kUnsupported, "importance head must be a 1x1 conv");
  }
  ConvLayerParams clipped = head;
  clipped.activation = Activation::kClip01;
  return ImportanceMap(ApplyConv(clipped, hyper_features));
}

ImportanceMap Adjust(const ImportanceMap& im, const ChannelVector& gamma) {
  if (gamma.size() != static_cast<std::size_t>(im.shape().channels)) {
    throw Error(ErrorCode::kShape, "gamma length does not match channels");
  }
  if (!gamma.AllPositiveFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  Tensor3 out = im.values();
  for (int c = 0; c < out.channels(); ++c) {
    const double g = gamma[c];
    for (double& v : out.channel(c)) v = v == 0.0 ? 0.0 : std::pow(v, g);
  }
  return ImportanceMap(std::move(out));
}

BinaryMask Binarize(const ImportanceMap& adjusted) {
  const auto values = adjusted.values().data();
  std::vector<std::uint8_t> bits(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) bits[i] = values[i] >= 0.5;
  return BinaryMask(adjusted.shape(), std::move(bits));
}

BinaryMask StochasticBinarize(const ImportanceMap& adjusted,
                              std::uint64_t seed) {
  DeterministicRng rng(seed);
  const auto values = adjusted.values().data();
  std::vector<std::uint8_t> bits(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    // round(a + r - 0.5) == 1  <=>  r >= 1 - a
    bits[i] = rng.Uniform() >= 1.0 - values[i];
  }
  return BinaryMask(adjusted.shape(), std::move(bits));
}

BinaryMask MaskFrom2dImportance(const Tensor3& im2d, int channels) {
  if (im2d.channels() != 1) {
    throw Error(ErrorCode::kShape, "2D importance map must have 1 channel");
  }
  if (channels <= 0) throw Error(ErrorCode::kShape, "channels must be > 0");
  BinaryMask mask({channels, im2d.height(), im2d.width()});
  const std::size_t plane = im2d.shape().plane();
  const auto values = im2d.data();
  for (std::size_t p = 0; p < plane; ++p) {
    const double v = values[p];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "2D importance value outside [0, 1]");
    }
    const int take =
        std::clamp(static_cast<int>(std::round(v * channels)), 0, channels);
    for (int c = 0; c < take; ++c) mask.set(c * plane + p, true);
  }
  return mask;
}

double SelectionRatio(const BinaryMask& mask) {
  if (mask.size() == 0) return 0.0;
  return static_cast<double>(mask.Popcount()) / static_cast<double>(mask.size());
}

double ReuseRatio(const BinaryMask& mask_lo, const BinaryMask& mask_hi) {
  if (mask_lo.shape() != mask_hi.shape()) {
    throw Error(ErrorCode::kShape, "reuse ratio needs masks of equal shape");
  }
  std::size_t lo = 0;
  std::size_t both = 0;
  for (std::size_t i = 0; i < mask_lo.size(); ++i) {
    if (mask_lo.get(i)) {
      ++lo;
      both += mask_hi.get(i);
    }
  }
  return lo == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(lo);
}

}  // namespace scr
