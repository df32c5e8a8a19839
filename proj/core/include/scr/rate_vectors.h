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

#ifndef SCR_RATE_VECTORS_H_
#define SCR_RATE_VECTORS_H_

#include <vector>

#include "scr/tensor.h"

namespace scr {

// Target quality level in [1, N_Q]; fractional values select interpolated
// vectors.
struct QualityLevel {
  double q = 1.0;
};

struct QualityVectors {
  ChannelVector qv;     // quantization step per channel
  ChannelVector iqv;    // inverse-quantization gain per channel
  ChannelVector gamma;  // importance adjustment exponent per channel
};

// Per-quality channel vectors, stored as positive linear values.
class RateVectorTable {
 public:
  RateVectorTable() = default;
  // Each family holds n_levels vectors of identical length. Throws on
  // inconsistent sizes or non-positive entries.
  RateVectorTable(std::vector<ChannelVector> qv, std::vector<ChannelVector> iqv,
                  std::vector<ChannelVector> gamma);

  int levels() const { return static_cast<int>(qv_.size()); }
  int channels() const {
    return qv_.empty() ? 0 : static_cast<int>(qv_.front().size());
  }

  // level is 1-based.
  const ChannelVector& qv(int level) const { return qv_.at(level - 1); }
  const ChannelVector& iqv(int level) const { return iqv_.at(level - 1); }
  const ChannelVector& gamma(int level) const { return gamma_.at(level - 1); }

  bool operator==(const RateVectorTable&) const = default;

 private:
  std::vector<ChannelVector> qv_;
  std::vector<ChannelVector> iqv_;
  std::vector<ChannelVector> gamma_;
};

// Integer q returns the stored vectors untouched. Fractional q takes the
// element-wise geometric interpolation lo^(1-f) * hi^f, f = q - floor(q),
// for all three families.
QualityVectors VectorsAt(const RateVectorTable& table, QualityLevel q);

// round(y / qv[c]) with ties away from zero; results are integral doubles.
Tensor3 AdaQ(const Tensor3& y, const ChannelVector& qv);

// Channel-wise multiplication by iqv.
Tensor3 AdaIQ(const Tensor3& y_hat, const ChannelVector& iqv);

// Rate-distortion trade-off used by the training loss: 0.2 * 2^(q - 8).
double LambdaFor(QualityLevel q);

}  // namespace scr

#endif  // SCR_RATE_VECTORS_H_
