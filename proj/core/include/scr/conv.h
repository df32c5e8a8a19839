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

#ifndef SCR_CONV_H_
#define SCR_CONV_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scr/tensor.h"

namespace scr {

enum class Padding : std::uint8_t { kSame = 0, kValid = 1 };

enum class Activation : std::uint8_t {
  kNone = 0,
  kRelu = 1,
  kLeakyRelu = 2,  // slope 0.2
  kClip01 = 3,
};

inline constexpr double kLeakySlope = 0.2;

// One 2D convolution, optionally preceded by nearest-neighbour upsampling.
// Weights are stored in 32 bits; all arithmetic runs in doubles.
//
// "same" padding is zero padding of kernel/2 on every side, so the output
// extent is (in + 2*(k/2) - k) / stride + 1; "valid" uses no padding.
struct ConvLayerParams {
  int out_channels = 0;
  int in_channels = 0;
  int kernel_h = 1;
  int kernel_w = 1;
  int stride = 1;
  int upsample = 1;
  Padding padding = Padding::kSame;
  Activation activation = Activation::kNone;
  std::vector<float> kernel;  // (out, in, kh, kw)
  std::vector<float> bias;    // (out)

  // Throws scr::Error(kShape / kUnsupported) on inconsistent fields.
  void Validate() const;
  std::size_t ParameterCount() const { return kernel.size() + bias.size(); }
  Shape3 OutputShape(const Shape3& in) const;

  bool operator==(const ConvLayerParams&) const = default;
};

// Forward pass of a single layer. For every output element the sum starts at
// the bias and adds products in (in_channel, ky, kx) lexicographic order, so
// results do not depend on scheduling.
Tensor3 ApplyConv(const ConvLayerParams& layer, const Tensor3& in);

Tensor3 RunLayers(std::span<const ConvLayerParams> layers, Tensor3 x);

double Activate(Activation act, double v);

}  // namespace scr

#endif  // SCR_CONV_H_
