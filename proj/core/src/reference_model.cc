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

#include "scr/reference_model.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scr/errors.h"
#include "scr/importance_mask.h"
#include "scr/random.h"
#include "scr/synthetic_image.h"
#include "scr/transform.h"

namespace scr {
namespace {

constexpr int kCalibrationImages = 4;
constexpr int kCalibrationSize = 64;

ConvLayerParams MakeLayer(int in, int out, int k, int stride, int upsample,
                          Activation act) {
  ConvLayerParams l;
  l.in_channels = in;
  l.out_channels = out;
  l.kernel_h = k;
  l.kernel_w = k;
  l.stride = stride;
  l.upsample = upsample;
  l.padding = Padding::kSame;
  l.activation = act;
  l.kernel.assign(static_cast<std::size_t>(out) * in * k * k, 0.0f);
  l.bias.assign(out, 0.0f);
  return l;
}

void FillHe(ConvLayerParams& l, DeterministicRng& rng, double gain = 1.0) {
  const double fan_in = static_cast<double>(l.in_channels) * l.kernel_h *
                        l.kernel_w;
  const double std = gain * std::sqrt(2.0 / fan_in);
  for (float& v : l.kernel) v = static_cast<float>(std * rng.Normal());
}

std::size_t PerOut(const ConvLayerParams& l) {
  return static_cast<std::size_t>(l.in_channels) * l.kernel_h * l.kernel_w;
}

// Rescales output channel o so that pre-activation v maps to v * scale +
// shift.
void AffineOutput(ConvLayerParams& l, int o, double scale, double shift) {
  const std::size_t n = PerOut(l);
  for (std::size_t i = 0; i < n; ++i) {
    float& v = l.kernel[o * n + i];
    v = static_cast<float>(v * scale);
  }
  l.bias[o] = static_cast<float>(l.bias[o] * scale + shift);
}

struct ChannelStats {
  std::vector<double> mean;
  std::vector<double> std;
};

ChannelStats Stats(const std::vector<Tensor3>& ts) {
  const int c = ts.front().channels();
  ChannelStats s{std::vector<double>(c, 0.0), std::vector<double>(c, 0.0)};
  for (int ch = 0; ch < c; ++ch) {
    double sum = 0.0;
    double sq = 0.0;
    std::size_t n = 0;
    for (const auto& t : ts) {
      for (double v : t.channel(ch)) {
        sum += v;
        sq += v * v;
        ++n;
      }
    }
    s.mean[ch] = sum / n;
    s.std[ch] = std::sqrt(std::max(sq / n - s.mean[ch] * s.mean[ch], 1e-12));
  }
  return s;
}

double SoftplusInverse(double s) { return std::log(std::expm1(s)); }

template <typename F>
std::vector<Tensor3> Map(const std::vector<Tensor3>& in, F f) {
  std::vector<Tensor3> out;
  out.reserve(in.size());
  for (const auto& t : in) out.push_back(f(t));
  return out;
}

double RatioForGamma(const std::vector<Tensor3>& maps,
                     const std::vector<double>& jitter, double gamma) {
  std::size_t on = 0;
  std::size_t n = 0;
  for (const auto& m : maps) {
    for (int c = 0; c < m.channels(); ++c) {
      const double g = gamma * jitter[c];
      for (double v : m.channel(c)) {
        on += v > 0.0 && std::pow(v, g) >= 0.5;
        ++n;
      }
    }
  }
  return static_cast<double>(on) / static_cast<double>(n);
}

// Largest-ratio-below-target search over log(gamma); the selection ratio is
// non-increasing in gamma.
double SolveGamma(const std::vector<Tensor3>& maps,
                  const std::vector<double>& jitter, double target) {
  double lo = std::log(1e-3);
  double hi = std::log(1e3);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (RatioForGamma(maps, jitter, std::exp(mid)) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp(hi);
}

WeightContainer Skeleton(const ReferenceConfig& cfg) {
  if (cfg.latent_channels <= 0 || cfg.hyper_channels <= 0 ||
      cfg.hidden_channels <= 0 || cfg.hyper_feature_channels <= 0 ||
      cfg.levels < 2 || cfg.levels > 255) {
    throw Error(ErrorCode::kInvalidArgument, "bad reference model config");
  }
  const int n = cfg.hidden_channels;
  const int cy = cfg.latent_channels;
  const int cz = cfg.hyper_channels;
  const int chd = cfg.hyper_feature_channels;
  WeightContainer w;
  w.image_channels = 3;
  w.latent_channels = cy;
  w.hyper_channels = cz;
  w.hyper_feature_channels = chd;
  w.encoder = {MakeLayer(3, n, 5, 2, 1, Activation::kLeakyRelu),
               MakeLayer(n, n, 5, 2, 1, Activation::kLeakyRelu),
               MakeLayer(n, cy, 5, 2, 1, Activation::kNone)};
  w.decoder = {MakeLayer(cy, n, 5, 1, 2, Activation::kLeakyRelu),
               MakeLayer(n, n, 5, 1, 2, Activation::kLeakyRelu),
               MakeLayer(n, 3, 5, 1, 2, Activation::kNone)};
  w.hyper_encoder = {MakeLayer(cy, n, 3, 2, 1, Activation::kLeakyRelu),
                     MakeLayer(n, cz, 3, 2, 1, Activation::kNone)};
  w.hyper_decoder = {MakeLayer(cz, n, 3, 1, 2, Activation::kLeakyRelu),
                     MakeLayer(n, chd, 3, 1, 2, Activation::kLeakyRelu),
                     MakeLayer(chd, 2 * cy, 3, 1, 1, Activation::kNone)};
  w.importance_head = MakeLayer(chd, cy, 1, 1, 1, Activation::kClip01);
  w.importance_head_2d = MakeLayer(chd, cfg.levels, 1, 1, 1,
                                   Activation::kClip01);
  std::vector<ChannelVector> ones(cfg.levels,
                                  ChannelVector(std::vector<double>(cy, 1.0)));
  w.rate_vectors = RateVectorTable(ones, ones, ones);
  w.hyper_sigma.assign(cz, 1.0);
  return w;
}

}  // namespace

WeightContainer MakeZeroWeights(const ReferenceConfig& config) {
  WeightContainer w = Skeleton(config);
  SerializeWeights(w);
  return w;
}

WeightContainer MakeReferenceWeights(const ReferenceConfig& cfg) {
  WeightContainer w = Skeleton(cfg);
  DeterministicRng rng(cfg.seed);
  const int cy = cfg.latent_channels;
  const int cz = cfg.hyper_channels;
  const int nq = cfg.levels;

  for (auto* net : {&w.encoder, &w.decoder, &w.hyper_encoder,
                    &w.hyper_decoder}) {
    for (auto& l : *net) FillHe(l, rng);
  }
  FillHe(w.importance_head, rng);
  FillHe(*w.importance_head_2d, rng);

  const auto images = SyntheticCorpus(cfg.seed, kCalibrationImages,
                                      kCalibrationSize, kCalibrationSize);

  // Latent: per-channel scales spread around 2.
  {
    const auto y = Map(images, [&](const Tensor3& x) {
      return ForwardEncoder(w, x);
    });
    const ChannelStats s = Stats(y);
    for (int c = 0; c < cy; ++c) {
      const double target = 2.0 * std::exp(0.3 * rng.Normal());
      AffineOutput(w.encoder.back(), c, target / s.std[c],
                   -s.mean[c] * target / s.std[c]);
    }
  }
  const auto ys = Map(images, [&](const Tensor3& x) {
    return ForwardEncoder(w, x);
  });
  const ChannelStats y_stats = Stats(ys);

  // Hyper-latent scaled to std 2, and the static prior matched to it.
  {
    const auto z = Map(ys, [&](const Tensor3& y) {
      return ForwardHyperEncoder(w, y);
    });
    const ChannelStats s = Stats(z);
    for (int c = 0; c < cz; ++c) {
      AffineOutput(w.hyper_encoder.back(), c, 2.0 / s.std[c],
                   -s.mean[c] * 2.0 / s.std[c]);
    }
  }
  const auto z_hats = Map(ys, [&](const Tensor3& y) {
    Tensor3 z = ForwardHyperEncoder(w, y);
    for (double& v : z.data()) v = std::round(v);
    return z;
  });
  {
    const ChannelStats s = Stats(z_hats);
    for (int c = 0; c < cz; ++c) w.hyper_sigma[c] = std::max(s.std[c], 0.25);
  }

  // Parameter layer: small perturbations around mu = 0 and sigma = latent
  // scale of the channel.
  {
    ConvLayerParams& p = w.hyper_decoder.back();
    for (int c = 0; c < cy; ++c) AffineOutput(p, c, 0.05, 0.0);
    for (int c = 0; c < cy; ++c) {
      AffineOutput(p, cy + c, 0.05, SoftplusInverse(y_stats.std[c]));
    }
  }
  const auto features = Map(z_hats, [&](const Tensor3& z) {
    return ForwardHyperDecoder(w, z).features;
  });

  // Importance head: pre-activations centred near 0.5, spread 0.22.
  {
    ConvLayerParams raw = w.importance_head;
    raw.activation = Activation::kNone;
    const ChannelStats s = Stats(Map(features, [&](const Tensor3& f) {
      return ApplyConv(raw, f);
    }));
    for (int c = 0; c < cy; ++c) {
      const double center = 0.5 + 0.08 * rng.Normal();
      const double k = 0.22 / s.std[c];
      AffineOutput(w.importance_head, c, k, center - s.mean[c] * k);
    }
  }
  const auto maps = Map(features, [&](const Tensor3& f) {
    return ImportanceHead(f, w.importance_head).values();
  });

  std::vector<double> gamma_jitter(cy);
  std::vector<double> qv_jitter(cy);
  std::vector<double> iqv_jitter(cy);
  for (int c = 0; c < cy; ++c) {
    gamma_jitter[c] = std::exp(0.15 * rng.Normal());
    qv_jitter[c] = std::exp(0.1 * rng.Normal());
    iqv_jitter[c] = std::exp(0.05 * rng.Normal());
  }

  std::vector<double> targets(nq);
  for (int q = 0; q < nq; ++q) {
    targets[q] = cfg.ratio_low *
                 std::pow(cfg.ratio_high / cfg.ratio_low,
                          static_cast<double>(q) / (nq - 1));
  }

  std::vector<ChannelVector> qv;
  std::vector<ChannelVector> iqv;
  std::vector<ChannelVector> gamma;
  double previous_gamma = 1e300;
  for (int q = 1; q <= nq; ++q) {
    double g = SolveGamma(maps, gamma_jitter, targets[q - 1]);
    g = std::min(g, previous_gamma * (1.0 - 1e-6));
    previous_gamma = g;
    const double step = cfg.qv_high * std::exp2((nq - q) / 2.0);
    std::vector<double> vq(cy), viq(cy), vg(cy);
    for (int c = 0; c < cy; ++c) {
      vq[c] = step * qv_jitter[c];
      viq[c] = vq[c] * iqv_jitter[c];
      vg[c] = g * gamma_jitter[c];
    }
    qv.emplace_back(std::move(vq));
    iqv.emplace_back(std::move(viq));
    gamma.emplace_back(std::move(vg));
  }
  w.rate_vectors = RateVectorTable(std::move(qv), std::move(iqv),
                                   std::move(gamma));

  // Baseline 2D head: level q averages to the same target ratio.
  {
    ConvLayerParams& h2 = *w.importance_head_2d;
    ConvLayerParams raw = h2;
    raw.activation = Activation::kNone;
    const ChannelStats s = Stats(Map(features, [&](const Tensor3& f) {
      return ApplyConv(raw, f);
    }));
    for (int q = 0; q < nq; ++q) {
      const double k = 0.15 / s.std[q];
      AffineOutput(h2, q, k, targets[q] - s.mean[q] * k);
    }
  }

  SerializeWeights(w);
  return w;
}

}  // namespace scr
