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

#include "scr/rate_vectors.h"

#include <cmath>
#include <string>

#include "scr/errors.h"

namespace scr {
namespace {

void CheckFamily(const std::vector<ChannelVector>& family, std::size_t levels,
                 std::size_t channels, const char* name) {
  if (family.size() != levels) {
    throw Error(ErrorCode::kShape, std::string(name) + ": expected " +
                                       std::to_string(levels) + " levels");
  }
  for (const auto& v : family) {
    if (v.size() != channels) {
      throw Error(ErrorCode::kShape,
                  std::string(name) + ": inconsistent channel count");
    }
    if (!v.AllPositiveFinite()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(name) + ": entries must be positive and finite");
    }
  }
}

}  // namespace

RateVectorTable::RateVectorTable(std::vector<ChannelVector> qv,
                                 std::vector<ChannelVector> iqv,
                                 std::vector<ChannelVector> gamma)
    : qv_(std::move(qv)), iqv_(std::move(iqv)), gamma_(std::move(gamma)) {
  if (qv_.empty()) {
    throw Error(ErrorCode::kShape, "rate vector table needs at least 1 level");
  }
  const std::size_t channels = qv_.front().size();
  if (channels == 0) throw Error(ErrorCode::kShape, "zero-length vectors");
  CheckFamily(qv_, qv_.size(), channels, "qv");
  CheckFamily(iqv_, qv_.size(), channels, "iqv");
  CheckFamily(gamma_, qv_.size(), channels, "gamma");
}

QualityVectors VectorsAt(const RateVectorTable& table, QualityLevel q) {
  if (!(q.q >= 1.0 && q.q <= table.levels())) {
    throw Error(ErrorCode::kInvalidArgument,
                "quality level " + std::to_string(q.q) + " outside [1, " +
                    std::to_string(table.levels()) + "]");
  }
  const double lower = std::floor(q.q);
  const double frac = q.q - lower;
  const int lo = static_cast<int>(lower);
  if (frac == 0.0) {
    return {table.qv(lo), table.iqv(lo), table.gamma(lo)};
  }
  const int hi = lo + 1;
  auto blend = [frac](const ChannelVector& a, const ChannelVector& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = std::pow(a[i], 1.0 - frac) * std::pow(b[i], frac);
    }
    return ChannelVector(std::move(out));
  };
  return {blend(table.qv(lo), table.qv(hi)),
          blend(table.iqv(lo), table.iqv(hi)),
          blend(table.gamma(lo), table.gamma(hi))};
}

Tensor3 AdaQ(const Tensor3& y, const ChannelVector& qv) {
  Tensor3 out = ChannelwiseScale(y, qv, ScaleMode::kDivide);
  for (double& v : out.data()) v = std::round(v);
  return out;
}

Tensor3 AdaIQ(const Tensor3& y_hat, const ChannelVector& iqv) {
  return ChannelwiseScale(y_hat, iqv, ScaleMode::kMultiply);
}

double LambdaFor(QualityLevel q) { return 0.2 * std::exp2(q.q - 8.0); }

}  // namespace scr
