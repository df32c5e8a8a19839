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

#ifndef SCR_ENTROPY_MODEL_H_
#define SCR_ENTROPY_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scr/tensor.h"

namespace scr {

inline constexpr double kSigmaFloor = 1e-4;
inline constexpr int kDefaultPrecision = 16;
// Support half-width of a discretized CDF, in standard deviations.
inline constexpr double kTailSigmas = 9.0;

// Gaussian parameters for the selected elements, in selection order.
struct GaussianParams {
  std::vector<double> mu;
  std::vector<double> sigma;

  std::size_t size() const { return mu.size(); }
};

// mu / qv and sigma / qv, gathered through mask. sigma is floored at
// kSigmaFloor; zero_mean replaces every mu by 0.
GaussianParams MaskedParams(const Tensor3& mu_t, const Tensor3& sigma_t,
                            const ChannelVector& qv, const BinaryMask& mask,
                            bool zero_mean);

// Mass of N(mu, sigma^2) on [k - 0.5, k + 0.5). Evaluated on the upper tail
// so that pmf(k, mu, s) == pmf(2*mu - k, mu, s) bit-for-bit.
double Pmf(std::int64_t k, double mu, double sigma);

// Sum over i of -log2(max(Pmf(values[i], mu[i], sigma[i]), 2^-precision)).
// values must be integral.
double CrossEntropyBits(std::span<const double> values,
                        const GaussianParams& params,
                        int precision = kDefaultPrecision);

// Integer frequency table over the support [lo, hi] plus a trailing escape
// symbol for anything outside it.
struct DiscretizedCdf {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  int precision = kDefaultPrecision;
  // cdf[i] is the cumulative frequency before symbol i; cdf.back() ==
  // 2^precision. Symbol index (hi - lo + 1) is the escape.
  std::vector<std::uint32_t> cdf;

  std::size_t symbol_count() const { return cdf.size() - 1; }
  std::size_t escape_index() const { return symbol_count() - 1; }
  std::uint32_t frequency(std::size_t index) const {
    return cdf[index + 1] - cdf[index];
  }
  // Index of value, or escape_index() when outside [lo, hi].
  std::size_t IndexOf(std::int64_t value) const {
    if (value < lo || value > hi) return escape_index();
    return static_cast<std::size_t>(value - lo);
  }
};

// Quantizes the discretized Gaussian to 2^precision total frequency with
// every symbol (including escape) at frequency >= 1. The support is
// [floor(mu - 9 sigma), ceil(mu + 9 sigma)], capped at 2^(precision-2)
// symbols around round(mu). 8 <= precision <= 16.
DiscretizedCdf DiscretizeCdf(double mu, double sigma,
                             int precision = kDefaultPrecision);

}  // namespace scr

#endif  // SCR_ENTROPY_MODEL_H_
