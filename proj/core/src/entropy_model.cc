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

#include "scr/entropy_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scr/errors.h"

namespace scr {
namespace {

// P(X > x) for a standard normal.
double UpperTail(double x) {
  return 0.5 * std::erfc(x * (1.0 / std::numbers::sqrt2));
}

}  // namespace

GaussianParams MaskedParams(const Tensor3& mu_t, const Tensor3& sigma_t,
                            const ChannelVector& qv, const BinaryMask& mask,
                            bool zero_mean) {
  if (mu_t.shape() != sigma_t.shape() || mu_t.shape() != mask.shape()) {
    throw Error(ErrorCode::kShape, "masked params: shape mismatch");
  }
  if (!qv.AllPositiveFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "qv must be positive");
  }
  GaussianParams out;
  out.sigma = Select(ChannelwiseScale(sigma_t, qv, ScaleMode::kDivide), mask)
                  .values;
  for (double& s : out.sigma) s = std::max(s, kSigmaFloor);
  if (zero_mean) {
    out.mu.assign(out.sigma.size(), 0.0);
  } else {
    out.mu = Select(ChannelwiseScale(mu_t, qv, ScaleMode::kDivide), mask).values;
  }
  return out;
}

double Pmf(std::int64_t k, double mu, double sigma) {
  const double d = std::abs(static_cast<double>(k) - mu);
  const double p = UpperTail((d - 0.5) / sigma) - UpperTail((d + 0.5) / sigma);
  return std::max(p, 0.0);
}

double CrossEntropyBits(std::span<const double> values,
                        const GaussianParams& params, int precision) {
  if (values.size() != params.mu.size() ||
      values.size() != params.sigma.size()) {
    throw Error(ErrorCode::kShape, "cross entropy: length mismatch");
  }
  const double floor = std::ldexp(1.0, -precision);
  double bits = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v != std::round(v)) {
      throw Error(ErrorCode::kInvalidArgument, "cross entropy needs integers");
    }
    const double p = Pmf(static_cast<std::int64_t>(v), params.mu[i],
                         params.sigma[i]);
    bits -= std::log2(std::max(p, floor));
  }
  return bits;
}

DiscretizedCdf DiscretizeCdf(double mu, double sigma, int precision) {
  if (precision < 8 || precision > 16) {
    throw Error(ErrorCode::kInvalidArgument,
                "cdf precision must be in [8, 16], got " +
                    std::to_string(precision));
  }
  if (!std::isfinite(mu) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite distribution params");
  }
  sigma = std::max(sigma, kSigmaFloor);
  const std::uint32_t total = 1u << precision;
  const std::int64_t max_support = std::int64_t{1} << (precision - 2);

  DiscretizedCdf out;
  out.precision = precision;
  out.lo = static_cast<std::int64_t>(std::floor(mu - kTailSigmas * sigma));
  out.hi = static_cast<std::int64_t>(std::ceil(mu + kTailSigmas * sigma));
  if (out.hi - out.lo + 1 > max_support) {
    const auto center = static_cast<std::int64_t>(std::round(mu));
    out.lo = center - max_support / 2;
    out.hi = out.lo + max_support - 1;
  }

  const std::size_t support = static_cast<std::size_t>(out.hi - out.lo + 1);
  const std::size_t n = support + 1;
  std::vector<double> prob(n);
  double in_support = 0.0;
  for (std::size_t i = 0; i < support; ++i) {
    prob[i] = Pmf(out.lo + static_cast<std::int64_t>(i), mu, sigma);
    in_support += prob[i];
  }
  prob[support] = std::max(0.0, 1.0 - in_support);

  const double spare = static_cast<double>(total - n);
  std::vector<std::uint32_t> freq(n);
  std::uint64_t used = 0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    freq[i] = 1 + static_cast<std::uint32_t>(std::floor(prob[i] * spare));
    used += freq[i];
    if (prob[i] > prob[argmax]) argmax = i;
  }
  // floor() can only undershoot, but guard against rounding in the sum of
  // probabilities anyway.
  if (used > total) {
    std::uint64_t excess = used - total;
    while (excess > 0) {
      for (std::size_t i = 0; i < n && excess > 0; ++i) {
        if (freq[i] > 1) {
          --freq[i];
          --excess;
        }
      }
    }
  } else {
    freq[argmax] += static_cast<std::uint32_t>(total - used);
  }

  out.cdf.resize(n + 1);
  out.cdf[0] = 0;
  for (std::size_t i = 0; i < n; ++i) out.cdf[i + 1] = out.cdf[i] + freq[i];
  return out;
}

}  // namespace scr
