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

#ifndef SCR_WEIGHTS_H_
#define SCR_WEIGHTS_H_

// Weight container (.scrw). All integers and floats little-endian:
//
//   "SCRW" | u32 version
//   manifest: u32 image_channels, latent_channels, hyper_channels,
//             hyper_feature_channels, levels, flags (bit0: 2D head present)
//   layers:   encoder, decoder, hyper_encoder, hyper_decoder networks, each
//             u32 layer_count followed by layers; then importance_head and,
//             if flagged, importance_head_2d as single layers. A layer is
//             u32 out, in, kh, kw | u8 stride, upsample, padding, activation
//             | f32 kernel[out*in*kh*kw] | f32 bias[out]
//   rate vectors: u32 levels, u32 channels, f64 qv[levels][channels],
//             iqv[levels][channels], gamma[levels][channels]
//   hyper sigma: u32 count, f64 sigma[count]
//   digest:   first 16 bytes of SHA-256 over everything above

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scr/conv.h"
#include "scr/rate_vectors.h"

namespace scr {

inline constexpr std::uint32_t kWeightsVersion = 1;

using Digest = std::array<std::uint8_t, 16>;

std::string DigestHex(const Digest& d);
Digest ComputeDigest(std::span<const std::uint8_t> bytes);

struct WeightContainer {
  int image_channels = 3;
  int latent_channels = 0;         // C_y
  int hyper_channels = 0;          // C_z
  int hyper_feature_channels = 0;  // input width of the parameter layer

  std::vector<ConvLayerParams> encoder;
  std::vector<ConvLayerParams> decoder;
  std::vector<ConvLayerParams> hyper_encoder;
  // Last layer produces 2*C_y channels (mu then raw sigma); its input is the
  // feature map read by the importance heads.
  std::vector<ConvLayerParams> hyper_decoder;
  ConvLayerParams importance_head;                   // C_hd -> C_y, 1x1
  std::optional<ConvLayerParams> importance_head_2d;  // C_hd -> N_Q, 1x1

  RateVectorTable rate_vectors;
  std::vector<double> hyper_sigma;  // static zero-mean prior per z channel

  // Set by LoadWeights / SerializeWeights.
  Digest digest{};

  int levels() const { return rate_vectors.levels(); }
  int EncoderStride() const;
  int HyperStride() const;
  // Image dims are padded up to a multiple of this.
  int PadMultiple() const { return EncoderStride() * HyperStride(); }

  // Checks channel chaining and head shapes; throws kShape / kUnsupported.
  void Validate() const;

  bool SameParameters(const WeightContainer& other) const;
};

// Validates and serializes; stores the resulting digest in w.digest.
std::vector<std::uint8_t> SerializeWeights(WeightContainer& w);

// Throws kBadMagic, kBadVersion, kTruncated, kDigestMismatch, kUnsupported.
WeightContainer LoadWeights(std::span<const std::uint8_t> bytes);
WeightContainer LoadWeightsFile(const std::string& path);

struct ManifestRow {
  std::string section;
  std::string detail;
  std::size_t parameters = 0;
  bool selective = false;  // part of the selective-compression overhead
};

struct ParameterManifest {
  std::vector<ManifestRow> rows;
  std::size_t total = 0;
  std::size_t selective = 0;

  double SelectiveFraction() const {
    return total == 0 ? 0.0 : static_cast<double>(selective) / total;
  }
};

ParameterManifest BuildManifest(const WeightContainer& w);

}  // namespace scr

#endif  // SCR_WEIGHTS_H_
