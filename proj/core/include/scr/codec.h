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

#ifndef SCR_CODEC_H_
#define SCR_CODEC_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "scr/container.h"
#include "scr/importance_mask.h"
#include "scr/rate_vectors.h"
#include "scr/tensor.h"
#include "scr/transform.h"
#include "scr/weights.h"

namespace scr {

struct EncodeOptions {
  MaskMode mask_mode = MaskMode::Deterministic();
  bool zero_mean = false;
};

// Encoder-side intermediates, kept for instrumentation and analytics.
struct EncoderTrace {
  double quality = 0.0;  // the 1/256-quantized value actually used
  BinaryMask mask;
  std::vector<std::int64_t> z_symbols;
  std::vector<std::int64_t> y_symbols;  // selected, quantized latent
  double y_cross_entropy_bits = 0.0;
};

struct EncodeResult {
  ScrBitstream bitstream;
  EncoderTrace trace;
};

// Wall-clock seconds per decode stage. mask_gen covers the importance head,
// adjustment and binarisation; entropy_decode covers CDF construction and
// range decoding of both streams; decoder_net includes inverse quantisation.
struct DecodeTimings {
  double hyper_net = 0.0;
  double mask_gen = 0.0;
  double entropy_decode = 0.0;
  double reshape = 0.0;
  double decoder_net = 0.0;
  double total = 0.0;

  double StageSum() const {
    return hyper_net + mask_gen + entropy_decode + reshape + decoder_net;
  }
};

struct DecoderTrace {
  BinaryMask mask;
  std::vector<std::int64_t> y_symbols;
  std::size_t y_symbols_decoded = 0;  // range decoder symbol counter
  DecodeTimings timings;
};

struct DecodeResult {
  Tensor3 image;  // (image_channels, H, W) in [0, 1], cropped to true size
  DecoderTrace trace;
};

// image is (image_channels, H, W) with values in [0, 1]; any H, W up to
// 65535 (padded internally). level must lie in [1, N_Q].
EncodeResult EncodeImage(const Tensor3& image, const WeightContainer& w,
                         int level, const EncodeOptions& options = {});

// Fractional quality levels; q is first truncated to the 1/256 grid stored
// in the header, and the interpolated vectors are evaluated at that value.
EncodeResult EncodeContinuous(const Tensor3& image, const WeightContainer& w,
                              double q, const EncodeOptions& options = {});

// Throws kDigestMismatch if the stream was produced with other weights.
DecodeResult DecodeImage(const ScrBitstream& bs, const WeightContainer& w);

// Mask the decoder would derive from the hyper-decoder features; shared by
// both ends of the codec.
BinaryMask GenerateMask(const WeightContainer& w, const Tensor3& features,
                        double quality, const MaskMode& mode);

struct RateReport {
  std::size_t pixels = 0;  // true (unpadded) pixel count
  std::size_t bits_total = 0;
  std::size_t bits_header = 0;
  std::size_t bits_z = 0;
  std::size_t bits_y = 0;
  double bpp = 0.0;
  double selection_ratio = 0.0;
  std::optional<double> psnr;
  DecodeTimings decode;
};

// bits_total is the size of the serialized file, never a sum of parts; the
// breakdown is reported alongside.
RateReport MakeRateReport(const ScrBitstream& bs, const BinaryMask& mask);

// PSNR in dB between 8-bit quantisations of a and b.
double Psnr8Bit(const Tensor3& a, const Tensor3& b);

}  // namespace scr

#endif  // SCR_CODEC_H_
