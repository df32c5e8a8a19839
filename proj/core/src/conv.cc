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

#include "scr/conv.h"

#include <algorithm>
#include <string>

#include "scr/errors.h"

namespace scr {
namespace {

Tensor3 UpsampleNearest(const Tensor3& in, int factor) {
  Tensor3 out({in.channels(), in.height() * factor, in.width() * factor});
  for (int c = 0; c < in.channels(); ++c) {
    for (int y = 0; y < out.height(); ++y) {
      const int sy = y / factor;
      for (int x = 0; x < out.width(); ++x) {
        out.at(c, y, x) = in.at(c, sy, x / factor);
      }
    }
  }
  return out;
}

// Smallest xo >= 0 with xo*stride + offset >= 0.
int FirstValid(int offset, int stride) {
  if (offset >= 0) return 0;
  return (-offset + stride - 1) / stride;
}

// One past the largest xo with xo*stride + offset < extent.
int EndValid(int offset, int stride, int extent, int out_extent) {
  const int limit = extent - offset;  // need xo*stride < limit
  if (limit <= 0) return 0;
  return std::min(out_extent, (limit + stride - 1) / stride);
}

}  // namespace

double Activate(Activation act, double v) {
  switch (act) {
    case Activation::kNone: return v;
    case Activation::kRelu: return v > 0.0 ? v : 0.0;
    case Activation::kLeakyRelu: return v > 0.0 ? v : kLeakySlope * v;
    case Activation::kClip01: return std::clamp(v, 0.0, 1.0);
  }
  return v;
}

void ConvLayerParams::Validate() const {
  if (out_channels <= 0 || in_channels <= 0 || kernel_h <= 0 ||
      kernel_w <= 0) {
    throw Error(ErrorCode::kShape, "conv layer with non-positive dimensions");
  }
  if (stride < 1 || upsample < 1) {
    throw Error(ErrorCode::kInvalidArgument, "conv stride/upsample must be >= 1");
  }
  if (padding != Padding::kSame && padding != Padding::kValid) {
    throw Error(ErrorCode::kUnsupported, "unknown padding mode");
  }
  switch (activation) {
    case Activation::kNone:
    case Activation::kRelu:
    case Activation::kLeakyRelu:
    case Activation::kClip01:
      break;
    default:
      throw Error(ErrorCode::kUnsupported,
                  "unknown activation " +
                      std::to_string(static_cast<int>(activation)));
  }
  const std::size_t expected = static_cast<std::size_t>(out_channels) *
                               in_channels * kernel_h * kernel_w;
  if (kernel.size() != expected ||
      bias.size() != static_cast<std::size_t>(out_channels)) {
    throw Error(ErrorCode::kShape, "conv kernel/bias size mismatch");
  }
}

Shape3 ConvLayerParams::OutputShape(const Shape3& in) const {
  const int h = in.height * upsample;
  const int w = in.width * upsample;
  const int ph = padding == Padding::kSame ? kernel_h / 2 : 0;
  const int pw = padding == Padding::kSame ? kernel_w / 2 : 0;
  const int oh = (h + 2 * ph - kernel_h) / stride + 1;
  const int ow = (w + 2 * pw - kernel_w) / stride + 1;
  return {out_channels, oh, ow};
}

Tensor3 ApplyConv(const ConvLayerParams& layer, const Tensor3& in_raw) {
  layer.Validate();
  if (in_raw.channels() != layer.in_channels) {
    throw Error(ErrorCode::kShape,
                "conv expects " + std::to_string(layer.in_channels) +
                    " input channels, got " +
                    std::to_string(in_raw.channels()));
  }
  const Shape3 out_shape = layer.OutputShape(in_raw.shape());
  if (out_shape.height <= 0 || out_shape.width <= 0) {
    throw Error(ErrorCode::kShape, "conv input smaller than kernel");
  }
  const Tensor3 upsampled =
      layer.upsample > 1 ? UpsampleNearest(in_raw, layer.upsample) : Tensor3();
  const Tensor3& in = layer.upsample > 1 ? upsampled : in_raw;

  const int kh = layer.kernel_h;
  const int kw = layer.kernel_w;
  const int s = layer.stride;
  const int ph = layer.padding == Padding::kSame ? kh / 2 : 0;
  const int pw = layer.padding == Padding::kSame ? kw / 2 : 0;
  const int ih = in.height();
  const int iw = in.width();
  const int oh = out_shape.height;
  const int ow = out_shape.width;

  Tensor3 out(out_shape);
  for (int o = 0; o < layer.out_channels; ++o) {
    auto acc = out.channel(o);
    std::fill(acc.begin(), acc.end(), static_cast<double>(layer.bias[o]));
    for (int i = 0; i < layer.in_channels; ++i) {
      const auto src = in.channel(i);
      const float* k = layer.kernel.data() +
                       (static_cast<std::size_t>(o) * layer.in_channels + i) *
                           kh * kw;
      for (int ky = 0; ky < kh; ++ky) {
        const int y0 = FirstValid(ky - ph, s);
        const int y1 = EndValid(ky - ph, s, ih, oh);
        for (int kx = 0; kx < kw; ++kx) {
          const double w = k[ky * kw + kx];
          const int x0 = FirstValid(kx - pw, s);
          const int x1 = EndValid(kx - pw, s, iw, ow);
          for (int yo = y0; yo < y1; ++yo) {
            const double* row =
                src.data() + static_cast<std::size_t>(yo * s + ky - ph) * iw;
            double* dst = acc.data() + static_cast<std::size_t>(yo) * ow;
            const int shift = kx - pw;
            if (s == 1) {
              for (int xo = x0; xo < x1; ++xo) dst[xo] += w * row[xo + shift];
            } else {
              for (int xo = x0; xo < x1; ++xo) {
                dst[xo] += w * row[xo * s + shift];
              }
            }
          }
        }
      }
    }
    if (layer.activation != Activation::kNone) {
      for (double& v : acc) v = Activate(layer.activation, v);
    }
  }
  return out;
}

Tensor3 RunLayers(std::span<const ConvLayerParams> layers, Tensor3 x) {
  for (const auto& layer : layers) x = ApplyConv(layer, x);
  return x;
}

}  // namespace scr
