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

#include "scr/weights.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "scr/bytes.h"
#include "scr/errors.h"

namespace scr {
namespace {

constexpr char kMagic[4] = {'S', 'C', 'R', 'W'};
constexpr std::uint32_t kFlagHas2dHead = 1u;

void WriteLayer(ByteWriter& w, const ConvLayerParams& l) {
  w.U32(l.out_channels);
  w.U32(l.in_channels);
  w.U32(l.kernel_h);
  w.U32(l.kernel_w);
  w.U8(static_cast<std::uint8_t>(l.stride));
  w.U8(static_cast<std::uint8_t>(l.upsample));
  w.U8(static_cast<std::uint8_t>(l.padding));
  w.U8(static_cast<std::uint8_t>(l.activation));
  for (float v : l.kernel) w.F32(v);
  for (float v : l.bias) w.F32(v);
}

ConvLayerParams ReadLayer(ByteReader& r) {
  ConvLayerParams l;
  const std::uint32_t out = r.U32();
  const std::uint32_t in = r.U32();
  const std::uint32_t kh = r.U32();
  const std::uint32_t kw = r.U32();
  // Bound dimensions before allocating anything sized by them.
  constexpr std::uint32_t kMaxDim = 1u << 12;
  if (out == 0 || in == 0 || kh == 0 || kw == 0 || out > kMaxDim ||
      in > kMaxDim || kh > 64 || kw > 64) {
    throw Error(ErrorCode::kUnsupported, "implausible layer dimensions");
  }
  l.out_channels = static_cast<int>(out);
  l.in_channels = static_cast<int>(in);
  l.kernel_h = static_cast<int>(kh);
  l.kernel_w = static_cast<int>(kw);
  l.stride = r.U8();
  l.upsample = r.U8();
  l.padding = static_cast<Padding>(r.U8());
  l.activation = static_cast<Activation>(r.U8());
  const std::size_t n = static_cast<std::size_t>(out) * in * kh * kw;
  if (r.remaining() < (n + out) * sizeof(float)) {
    throw Error(ErrorCode::kTruncated, "layer weights truncated");
  }
  l.kernel.resize(n);
  for (auto& v : l.kernel) v = r.F32();
  l.bias.resize(out);
  for (auto& v : l.bias) v = r.F32();
  l.Validate();
  return l;
}

void WriteNetwork(ByteWriter& w, const std::vector<ConvLayerParams>& net) {
  w.U32(static_cast<std::uint32_t>(net.size()));
  for (const auto& l : net) WriteLayer(w, l);
}

std::vector<ConvLayerParams> ReadNetwork(ByteReader& r) {
  const std::uint32_t n = r.U32();
  if (n == 0 || n > 64) throw Error(ErrorCode::kUnsupported, "bad layer count");
  std::vector<ConvLayerParams> net;
  for (std::uint32_t i = 0; i < n; ++i) net.push_back(ReadLayer(r));
  return net;
}

std::vector<ChannelVector> ReadFamily(ByteReader& r, std::uint32_t levels,
                                      std::uint32_t channels) {
  std::vector<ChannelVector> out;
  for (std::uint32_t q = 0; q < levels; ++q) {
    std::vector<double> v(channels);
    for (auto& x : v) x = r.F64();
    out.emplace_back(std::move(v));
  }
  return out;
}

void CheckChain(const std::vector<ConvLayerParams>& net, int in, int out,
                const char* name) {
  if (net.empty()) {
    throw Error(ErrorCode::kShape, std::string(name) + " has no layers");
  }
  int channels = in;
  for (const auto& l : net) {
    l.Validate();
    if (l.in_channels != channels) {
      throw Error(ErrorCode::kShape,
                  std::string(name) + ": layer expects " +
                      std::to_string(l.in_channels) + " channels, gets " +
                      std::to_string(channels));
    }
    if (l.padding != Padding::kSame || l.kernel_h % 2 == 0 ||
        l.kernel_w % 2 == 0) {
      throw Error(ErrorCode::kUnsupported,
                  std::string(name) + ": layers must use odd kernels, same padding");
    }
    channels = l.out_channels;
  }
  if (channels != out) {
    throw Error(ErrorCode::kShape, std::string(name) + " ends with " +
                                       std::to_string(channels) +
                                       " channels, expected " +
                                       std::to_string(out));
  }
}

int Product(const std::vector<ConvLayerParams>& net, bool upsample) {
  int p = 1;
  for (const auto& l : net) p *= upsample ? l.upsample : l.stride;
  return p;
}

void CheckHead(const ConvLayerParams& head, int in, int out, const char* name) {
  head.Validate();
  if (head.kernel_h != 1 || head.kernel_w != 1 || head.stride != 1 ||
      head.upsample != 1) {
    throw Error(ErrorCode::kUnsupported, std::string(name) + " must be 1x1");
  }
  if (head.in_channels != in || head.out_channels != out) {
    throw Error(ErrorCode::kShape, std::string(name) + " channel mismatch");
  }
}

std::string LayerDetail(const std::vector<ConvLayerParams>& net) {
  std::string s;
  for (const auto& l : net) {
    if (!s.empty()) s += ", ";
    s += std::to_string(l.in_channels) + "->" + std::to_string(l.out_channels) +
         " k" + std::to_string(l.kernel_h);
  }
  return s;
}

std::size_t Count(const std::vector<ConvLayerParams>& net) {
  std::size_t n = 0;
  for (const auto& l : net) n += l.ParameterCount();
  return n;
}

}  // namespace

std::string DigestHex(const Digest& d) {
  std::string s;
  char buf[3];
  for (auto b : d) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    s += buf;
  }
  return s;
}

Digest ComputeDigest(std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, EVP_MAX_MD_SIZE> full{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), full.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len < 16) {
    throw Error(ErrorCode::kIo, "SHA-256 computation failed");
  }
  Digest d;
  std::copy_n(full.begin(), d.size(), d.begin());
  return d;
}

int WeightContainer::EncoderStride() const { return Product(encoder, false); }
int WeightContainer::HyperStride() const {
  return Product(hyper_encoder, false);
}

void WeightContainer::Validate() const {
  if (image_channels <= 0 || latent_channels <= 0 || hyper_channels <= 0 ||
      hyper_feature_channels <= 0) {
    throw Error(ErrorCode::kShape, "non-positive model dimensions");
  }
  CheckChain(encoder, image_channels, latent_channels, "encoder");
  CheckChain(decoder, latent_channels, image_channels, "decoder");
  CheckChain(hyper_encoder, latent_channels, hyper_channels, "hyper_encoder");
  CheckChain(hyper_decoder, hyper_channels, 2 * latent_channels,
             "hyper_decoder");
  if (hyper_decoder.back().in_channels != hyper_feature_channels ||
      hyper_decoder.back().stride != 1 || hyper_decoder.back().upsample != 1) {
    throw Error(ErrorCode::kShape,
                "hyper_decoder parameter layer must read the feature map 1:1");
  }
  if (Product(encoder, true) != 1 || Product(hyper_encoder, true) != 1 ||
      Product(decoder, false) != 1 || Product(hyper_decoder, false) != 1) {
    throw Error(ErrorCode::kUnsupported,
                "analysis transforms only downsample, synthesis only upsample");
  }
  if (Product(decoder, true) != EncoderStride() ||
      Product(hyper_decoder, true) != HyperStride()) {
    throw Error(ErrorCode::kShape, "synthesis upsampling does not mirror stride");
  }
  CheckHead(importance_head, hyper_feature_channels, latent_channels,
            "importance_head");
  if (rate_vectors.channels() != latent_channels || rate_vectors.levels() < 1) {
    throw Error(ErrorCode::kShape, "rate vectors do not match latent channels");
  }
  if (importance_head_2d) {
    CheckHead(*importance_head_2d, hyper_feature_channels, levels(),
              "importance_head_2d");
  }
  if (hyper_sigma.size() != static_cast<std::size_t>(hyper_channels)) {
    throw Error(ErrorCode::kShape, "hyper sigma table size mismatch");
  }
  for (double s : hyper_sigma) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "hyper sigma must be positive");
    }
  }
}

bool WeightContainer::SameParameters(const WeightContainer& o) const {
  return image_channels == o.image_channels &&
         latent_channels == o.latent_channels &&
         hyper_channels == o.hyper_channels &&
         hyper_feature_channels == o.hyper_feature_channels &&
         encoder == o.encoder && decoder == o.decoder &&
         hyper_encoder == o.hyper_encoder && hyper_decoder == o.hyper_decoder &&
         importance_head == o.importance_head &&
         importance_head_2d == o.importance_head_2d &&
         rate_vectors == o.rate_vectors && hyper_sigma == o.hyper_sigma;
}

std::vector<std::uint8_t> SerializeWeights(WeightContainer& w) {
  w.Validate();
  ByteWriter out;
  for (char c : kMagic) out.U8(static_cast<std::uint8_t>(c));
  out.U32(kWeightsVersion);
  out.U32(w.image_channels);
  out.U32(w.latent_channels);
  out.U32(w.hyper_channels);
  out.U32(w.hyper_feature_channels);
  out.U32(w.levels());
  out.U32(w.importance_head_2d ? kFlagHas2dHead : 0u);

  WriteNetwork(out, w.encoder);
  WriteNetwork(out, w.decoder);
  WriteNetwork(out, w.hyper_encoder);
  WriteNetwork(out, w.hyper_decoder);
  WriteLayer(out, w.importance_head);
  if (w.importance_head_2d) WriteLayer(out, *w.importance_head_2d);

  const auto& rv = w.rate_vectors;
  out.U32(rv.levels());
  out.U32(rv.channels());
  for (int q = 1; q <= rv.levels(); ++q) {
    for (double v : rv.qv(q).values()) out.F64(v);
  }
  for (int q = 1; q <= rv.levels(); ++q) {
    for (double v : rv.iqv(q).values()) out.F64(v);
  }
  for (int q = 1; q <= rv.levels(); ++q) {
    for (double v : rv.gamma(q).values()) out.F64(v);
  }

  out.U32(static_cast<std::uint32_t>(w.hyper_sigma.size()));
  for (double s : w.hyper_sigma) out.F64(s);

  w.digest = ComputeDigest(out.data());
  out.Bytes(w.digest);
  return out.Take();
}

WeightContainer LoadWeights(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 + 4 + 16) {
    throw Error(ErrorCode::kTruncated, "weight container too short");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not a weight container (magic)");
  }
  const auto payload = bytes.first(bytes.size() - 16);
  Digest stored;
  std::copy_n(bytes.end() - 16, 16, stored.begin());
  if (ComputeDigest(payload) != stored) {
    throw Error(ErrorCode::kDigestMismatch, "weight container digest mismatch");
  }

  ByteReader r(payload);
  r.Bytes(4);
  const std::uint32_t version = r.U32();
  if (version != kWeightsVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported weight container version " + std::to_string(version));
  }
  WeightContainer w;
  w.image_channels = static_cast<int>(r.U32());
  w.latent_channels = static_cast<int>(r.U32());
  w.hyper_channels = static_cast<int>(r.U32());
  w.hyper_feature_channels = static_cast<int>(r.U32());
  const std::uint32_t levels = r.U32();
  const std::uint32_t flags = r.U32();
  if (flags & ~kFlagHas2dHead) {
    throw Error(ErrorCode::kUnsupported, "unknown weight container flags");
  }

  w.encoder = ReadNetwork(r);
  w.decoder = ReadNetwork(r);
  w.hyper_encoder = ReadNetwork(r);
  w.hyper_decoder = ReadNetwork(r);
  w.importance_head = ReadLayer(r);
  if (flags & kFlagHas2dHead) w.importance_head_2d = ReadLayer(r);

  const std::uint32_t rv_levels = r.U32();
  const std::uint32_t rv_channels = r.U32();
  if (rv_levels != levels || rv_levels == 0 || rv_levels > 255 ||
      rv_channels != static_cast<std::uint32_t>(w.latent_channels)) {
    throw Error(ErrorCode::kShape, "rate vector section header mismatch");
  }
  auto qv = ReadFamily(r, rv_levels, rv_channels);
  auto iqv = ReadFamily(r, rv_levels, rv_channels);
  auto gamma = ReadFamily(r, rv_levels, rv_channels);
  w.rate_vectors =
      RateVectorTable(std::move(qv), std::move(iqv), std::move(gamma));

  const std::uint32_t n_sigma = r.U32();
  if (n_sigma != static_cast<std::uint32_t>(w.hyper_channels)) {
    throw Error(ErrorCode::kShape, "hyper sigma table size mismatch");
  }
  w.hyper_sigma.resize(n_sigma);
  for (auto& s : w.hyper_sigma) s = r.F64();
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kCorruptStream, "trailing bytes in weight container");
  }
  w.Validate();
  w.digest = stored;
  return w;
}

WeightContainer LoadWeightsFile(const std::string& path) {
  return LoadWeights(ReadFileBytes(path));
}

ParameterManifest BuildManifest(const WeightContainer& w) {
  ParameterManifest m;
  auto add = [&m](std::string section, std::string detail, std::size_t n,
                  bool selective) {
    m.rows.push_back({std::move(section), std::move(detail), n, selective});
    m.total += n;
    if (selective) m.selective += n;
  };
  add("encoder", LayerDetail(w.encoder), Count(w.encoder), false);
  add("decoder", LayerDetail(w.decoder), Count(w.decoder), false);
  add("hyper_encoder", LayerDetail(w.hyper_encoder), Count(w.hyper_encoder),
      false);
  add("hyper_decoder", LayerDetail(w.hyper_decoder), Count(w.hyper_decoder),
      false);
  add("hyper_prior_sigma", std::to_string(w.hyper_channels) + " ch.",
      w.hyper_sigma.size(), false);
  const auto& head = w.importance_head;
  add("importance_map_generation",
      std::to_string(head.in_channels) + " (in) * " +
          std::to_string(head.out_channels) + " (out) + " +
          std::to_string(head.out_channels) + " (bias)",
      head.ParameterCount(), true);
  const std::string vec = std::to_string(w.levels()) + " levels * " +
                          std::to_string(w.latent_channels) + " ch.";
  const std::size_t per_family =
      static_cast<std::size_t>(w.levels()) * w.latent_channels;
  add("quantization_vectors", vec, per_family, true);
  add("inverse_quantization_vectors", vec, per_family, true);
  add("importance_adjustment_curves", vec, per_family, true);
  if (w.importance_head_2d) {
    const auto& h2 = *w.importance_head_2d;
    add("importance_map_2d_baseline",
        std::to_string(h2.in_channels) + " (in) * " +
            std::to_string(h2.out_channels) + " (out) + " +
            std::to_string(h2.out_channels) + " (bias)",
        h2.ParameterCount(), false);
  }
  return m;
}

}  // namespace scr
