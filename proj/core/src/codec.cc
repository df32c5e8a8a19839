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

#include "scr/codec.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "scr/entropy_model.h"
#include "scr/errors.h"
#include "scr/range_coder.h"

namespace scr {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

std::int64_t ToSymbol(double v) {
  if (!(std::abs(v) < 2147483647.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "latent value out of codable range: " + std::to_string(v));
  }
  return static_cast<std::int64_t>(v);
}

std::vector<DiscretizedCdf> HyperCdfs(const WeightContainer& w) {
  std::vector<DiscretizedCdf> cdfs;
  cdfs.reserve(w.hyper_sigma.size());
  for (double s : w.hyper_sigma) cdfs.push_back(DiscretizeCdf(0.0, s));
  return cdfs;
}

// Interpolates the per-level 2D importance maps (channel q-1 belongs to
// level q) linearly in q.
Tensor3 Importance2dAt(const WeightContainer& w, const Tensor3& features,
                       double quality) {
  if (!w.importance_head_2d) {
    throw Error(ErrorCode::kUnsupported,
                "weights carry no 2D importance head for the baseline mask");
  }
  ConvLayerParams head = *w.importance_head_2d;
  head.activation = Activation::kClip01;
  const Tensor3 maps = ApplyConv(head, features);
  const int lo = static_cast<int>(std::floor(quality));
  const double frac = quality - lo;
  const int hi = std::min(lo + 1, w.levels());
  Tensor3 out({1, maps.height(), maps.width()});
  const auto a = maps.channel(lo - 1);
  const auto b = maps.channel(hi - 1);
  auto dst = out.channel(0);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = frac == 0.0 ? a[i] : (1.0 - frac) * a[i] + frac * b[i];
  }
  return out;
}

void CheckQuality(const WeightContainer& w, double q) {
  if (!(q >= 1.0 && q <= w.levels())) {
    throw Error(ErrorCode::kInvalidArgument,
                "quality " + std::to_string(q) + " outside [1, " +
                    std::to_string(w.levels()) + "]");
  }
}

EncodeResult Encode(const Tensor3& image, const WeightContainer& w,
                    std::uint16_t quality_fixed, const EncodeOptions& options) {
  const double quality = quality_fixed / 256.0;
  CheckQuality(w, quality);
  if (image.channels() != w.image_channels) {
    throw Error(ErrorCode::kShape, "image has " +
                                       std::to_string(image.channels()) +
                                       " channels, model expects " +
                                       std::to_string(w.image_channels));
  }
  if (image.height() > 0xFFFF || image.width() > 0xFFFF) {
    throw Error(ErrorCode::kInvalidArgument, "image too large for header");
  }

  const Tensor3 padded = PadReplicate(image, w.PadMultiple());
  const Tensor3 y = ForwardEncoder(w, padded);
  const Tensor3 z = ForwardHyperEncoder(w, y);

  EncodeResult result;
  EncoderTrace& trace = result.trace;
  trace.quality = quality;

  // Hyper-latent: rounded, coded against the static per-channel prior.
  Tensor3 z_hat = z;
  for (double& v : z_hat.data()) v = std::round(v);
  const auto z_cdfs = HyperCdfs(w);
  RangeEncoder z_enc;
  const std::size_t z_plane = z_hat.shape().plane();
  trace.z_symbols.reserve(z_hat.size());
  for (int c = 0; c < z_hat.channels(); ++c) {
    for (std::size_t i = 0; i < z_plane; ++i) {
      const std::int64_t s = ToSymbol(z_hat.channel(c)[i]);
      trace.z_symbols.push_back(s);
      z_enc.Put(s, z_cdfs[c]);
    }
  }

  const HyperDecoderOutput hyper = ForwardHyperDecoder(w, z_hat);
  const QualityVectors vectors = VectorsAt(w.rate_vectors, {quality});
  trace.mask = GenerateMask(w, hyper.features, quality, options.mask_mode);

  const Tensor3 y_hat = AdaQ(y, vectors.qv);
  const SelectedElements selected = Select(y_hat, trace.mask);
  const GaussianParams params = MaskedParams(hyper.mu, hyper.sigma, vectors.qv,
                                             trace.mask, options.zero_mean);
  trace.y_cross_entropy_bits = CrossEntropyBits(selected.values, params);

  RangeEncoder y_enc;
  trace.y_symbols.reserve(selected.count());
  for (std::size_t i = 0; i < selected.count(); ++i) {
    const std::int64_t s = ToSymbol(selected.values[i]);
    trace.y_symbols.push_back(s);
    y_enc.Put(s, DiscretizeCdf(params.mu[i], params.sigma[i]));
  }

  ScrHeader& h = result.bitstream.header;
  h.mask_mode = options.mask_mode;
  if (h.mask_mode.kind != MaskMode::Kind::kStochastic) h.mask_mode.seed = 0;
  h.zero_mean = options.zero_mean;
  h.quality_fixed = quality_fixed;
  h.image_width = static_cast<std::uint16_t>(image.width());
  h.image_height = static_cast<std::uint16_t>(image.height());
  h.latent = y.shape();
  h.hyper = z.shape();
  h.model_id = w.digest;
  result.bitstream.z_stream = z_enc.Finish();
  result.bitstream.y_stream = y_enc.Finish();
  return result;
}

}  // namespace

BinaryMask GenerateMask(const WeightContainer& w, const Tensor3& features,
                        double quality, const MaskMode& mode) {
  const Shape3 shape{w.latent_channels, features.height(), features.width()};
  switch (mode.kind) {
    case MaskMode::Kind::kAllOnes:
      return BinaryMask(shape, true);
    case MaskMode::Kind::kBaseline2d:
      return MaskFrom2dImportance(Importance2dAt(w, features, quality),
                                  w.latent_channels);
    case MaskMode::Kind::kDeterministic:
    case MaskMode::Kind::kStochastic: {
      const ChannelVector gamma = VectorsAt(w.rate_vectors, {quality}).gamma;
      const ImportanceMap adjusted =
          Adjust(ImportanceHead(features, w.importance_head), gamma);
      return mode.kind == MaskMode::Kind::kDeterministic
                 ? Binarize(adjusted)
                 : StochasticBinarize(adjusted, mode.seed);
    }
  }
  throw Error(ErrorCode::kUnsupported, "unknown mask mode");
}

EncodeResult EncodeImage(const Tensor3& image, const WeightContainer& w,
                         int level, const EncodeOptions& options) {
  CheckQuality(w, level);
  return Encode(image, w, QuantizeQuality(level), options);
}

EncodeResult EncodeContinuous(const Tensor3& image, const WeightContainer& w,
                              double q, const EncodeOptions& options) {
  CheckQuality(w, q);
  return Encode(image, w, QuantizeQuality(q), options);
}

DecodeResult DecodeImage(const ScrBitstream& bs, const WeightContainer& w) {
  const auto t_start = Clock::now();
  const ScrHeader& h = bs.header;
  if (h.model_id != w.digest) {
    throw Error(ErrorCode::kDigestMismatch,
                "bitstream model id " + DigestHex(h.model_id) +
                    " does not match weights " + DigestHex(w.digest));
  }
  const double quality = h.quality();
  CheckQuality(w, quality);
  const int m = w.PadMultiple();
  const int padded_h = (h.image_height + m - 1) / m * m;
  const int padded_w = (h.image_width + m - 1) / m * m;
  const int es = w.EncoderStride();
  const int hs = w.HyperStride();
  const Shape3 latent{w.latent_channels, padded_h / es, padded_w / es};
  const Shape3 hyper{w.hyper_channels, latent.height / hs, latent.width / hs};
  if (h.latent != latent || h.hyper != hyper) {
    throw Error(ErrorCode::kCorruptStream,
                "header tensor shapes inconsistent with image size and model");
  }
  if (h.mask_mode.kind == MaskMode::Kind::kBaseline2d &&
      !w.importance_head_2d) {
    throw Error(ErrorCode::kUnsupported, "2D mask mode needs a 2D head");
  }

  DecodeResult result;
  DecoderTrace& trace = result.trace;
  DecodeTimings& t = trace.timings;

  auto t0 = Clock::now();
  const auto z_cdfs = HyperCdfs(w);
  Tensor3 z_hat(hyper);
  {
    RangeDecoder dec(bs.z_stream.bytes);
    for (int c = 0; c < hyper.channels; ++c) {
      for (double& v : z_hat.channel(c)) {
        v = static_cast<double>(dec.Get(z_cdfs[c]));
      }
    }
    dec.CheckFinished();
  }
  auto t1 = Clock::now();
  t.entropy_decode += Seconds(t0, t1);

  const HyperDecoderOutput hyper_out = ForwardHyperDecoder(w, z_hat);
  auto t2 = Clock::now();
  t.hyper_net += Seconds(t1, t2);

  trace.mask = GenerateMask(w, hyper_out.features, quality, h.mask_mode);
  auto t3 = Clock::now();
  t.mask_gen += Seconds(t2, t3);

  const QualityVectors vectors = VectorsAt(w.rate_vectors, {quality});
  const GaussianParams params = MaskedParams(
      hyper_out.mu, hyper_out.sigma, vectors.qv, trace.mask, h.zero_mean);
  SelectedElements selected;
  selected.values.reserve(params.size());
  trace.y_symbols.reserve(params.size());
  {
    RangeDecoder dec(bs.y_stream.bytes);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const std::int64_t s =
          dec.Get(DiscretizeCdf(params.mu[i], params.sigma[i]));
      trace.y_symbols.push_back(s);
      selected.values.push_back(static_cast<double>(s));
    }
    dec.CheckFinished();
    trace.y_symbols_decoded = dec.symbols();
  }
  auto t4 = Clock::now();
  t.entropy_decode += Seconds(t3, t4);

  const Tensor3 y_breve = ReshapeInPlace(selected, trace.mask);
  auto t5 = Clock::now();
  t.reshape += Seconds(t4, t5);

  const Tensor3 x = ForwardDecoder(w, AdaIQ(y_breve, vectors.iqv));
  result.image = Crop(x, h.image_height, h.image_width);
  auto t6 = Clock::now();
  t.decoder_net += Seconds(t5, t6);
  t.total = Seconds(t_start, t6);
  return result;
}

RateReport MakeRateReport(const ScrBitstream& bs, const BinaryMask& mask) {
  RateReport r;
  r.pixels = static_cast<std::size_t>(bs.header.image_width) *
             bs.header.image_height;
  r.bits_total = WriteBitstream(bs).size() * 8;
  const SizeBreakdown sizes = Sizes(bs);
  r.bits_header = sizes.header_bits;
  r.bits_z = sizes.z_bits;
  r.bits_y = sizes.y_bits;
  r.bpp = static_cast<double>(r.bits_total) / static_cast<double>(r.pixels);
  r.selection_ratio = SelectionRatio(mask);
  return r;
}

double Psnr8Bit(const Tensor3& a, const Tensor3& b) {
  if (a.shape() != b.shape()) throw Error(ErrorCode::kShape, "psnr: shape mismatch");
  auto q8 = [](double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0); };
  double se = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = q8(da[i]) - q8(db[i]);
    se += d * d;
  }
  const double mse = se / static_cast<double>(da.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace scr
