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

#include "scr/transform.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "scr/entropy_model.h"
#include "scr/errors.h"

namespace scr {
namespace {

void CheckInput(const Tensor3& t, int channels, const char* stage) {
  if (t.channels() != channels) {
    throw Error(ErrorCode::kShape, std::string(stage) + ": expected " +
                                       std::to_string(channels) +
                                       " channels, got " +
                                       std::to_string(t.channels()));
  }
}

}  // namespace

double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

Tensor3 ForwardEncoder(const WeightContainer& w, const Tensor3& x) {
  CheckInput(x, w.image_channels, "encoder");
  const int m = w.PadMultiple();
  if (x.height() % m != 0 || x.width() % m != 0) {
    throw Error(ErrorCode::kShape, "encoder input must be padded to a multiple of " +
                                       std::to_string(m));
  }
  return RunLayers(w.encoder, x);
}

Tensor3 ForwardHyperEncoder(const WeightContainer& w, const Tensor3& y) {
  CheckInput(y, w.latent_channels, "hyper_encoder");
  return RunLayers(w.hyper_encoder, y);
}

HyperDecoderOutput ForwardHyperDecoder(const WeightContainer& w,
                                       const Tensor3& z_hat) {
  CheckInput(z_hat, w.hyper_channels, "hyper_decoder");
  const std::span<const ConvLayerParams> layers(w.hyper_decoder);
  Tensor3 features = RunLayers(layers.first(layers.size() - 1), z_hat);
  const Tensor3 params = ApplyConv(layers.back(), features);

  const int cy = w.latent_channels;
  const Shape3 shape{cy, params.height(), params.width()};
  const std::size_t n = shape.size();
  const auto src = params.data();
  std::vector<double> mu(src.begin(), src.begin() + n);
  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = std::max(Softplus(src[n + i]), kSigmaFloor);
  }
  return {Tensor3(shape, std::move(mu)), Tensor3(shape, std::move(sigma)),
          std::move(features)};
}

Tensor3 ForwardDecoder(const WeightContainer& w, const Tensor3& y_recon) {
  CheckInput(y_recon, w.latent_channels, "decoder");
  Tensor3 x = RunLayers(w.decoder, y_recon);
  for (double& v : x.data()) v = std::clamp(v, 0.0, 1.0);
  return x;
}

Tensor3 PadReplicate(const Tensor3& x, int multiple) {
  if (multiple <= 0) throw Error(ErrorCode::kInvalidArgument, "bad pad multiple");
  const int h = (x.height() + multiple - 1) / multiple * multiple;
  const int wd = (x.width() + multiple - 1) / multiple * multiple;
  if (h == x.height() && wd == x.width()) return x;
  Tensor3 out({x.channels(), h, wd});
  for (int c = 0; c < x.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      const int sy = std::min(y, x.height() - 1);
      for (int xx = 0; xx < wd; ++xx) {
        out.at(c, y, xx) = x.at(c, sy, std::min(xx, x.width() - 1));
      }
    }
  }
  return out;
}

Tensor3 Crop(const Tensor3& x, int height, int width) {
  if (height > x.height() || width > x.width() || height <= 0 || width <= 0) {
    throw Error(ErrorCode::kShape, "crop larger than tensor");
  }
  if (height == x.height() && width == x.width()) return x;
  Tensor3 out({x.channels(), height, width});
  for (int c = 0; c < x.channels(); ++c) {
    for (int y = 0; y < height; ++y) {
      for (int xx = 0; xx < width; ++xx) out.at(c, y, xx) = x.at(c, y, xx);
    }
  }
  return out;
}

}  // namespace scr
