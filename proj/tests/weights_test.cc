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

#include <gtest/gtest.h>

#include <cstring>

#include "scr/bytes.h"
#include "scr/errors.h"
#include "scr/fixtures.h"
#include "scr/reference_model.h"
#include "test_util.h"

namespace scr {
namespace {

const WeightContainer& Reference() {
  static const WeightContainer w = LoadWeightsFile(
      testing::DataPath(fixtures::kReferenceWeights));
  return w;
}

// Re-signs a modified container so structural checks run past the digest.
std::vector<std::uint8_t> Resign(std::vector<std::uint8_t> bytes) {
  const std::size_t n = bytes.size() - 16;
  const Digest d = ComputeDigest(std::span(bytes).first(n));
  std::copy(d.begin(), d.end(), bytes.begin() + n);
  return bytes;
}

ErrorCode CodeOf(std::span<const std::uint8_t> bytes) {
  try {
    LoadWeights(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "load succeeded";
  return ErrorCode::kIo;
}

TEST(WeightsTest, SaveLoadIsBitExact) {
  WeightContainer w = Reference();
  const auto bytes = SerializeWeights(w);
  const WeightContainer back = LoadWeights(bytes);
  EXPECT_TRUE(back.SameParameters(w));
  EXPECT_EQ(back.digest, w.digest);
  WeightContainer again = back;
  EXPECT_EQ(SerializeWeights(again), bytes);
}

TEST(WeightsTest, ReferenceRegeneratesByteIdentical) {
  WeightContainer w = MakeReferenceWeights();
  const auto bytes = SerializeWeights(w);
  EXPECT_EQ(bytes, ReadFileBytes(testing::DataPath(fixtures::kReferenceWeights)));
  EXPECT_EQ(DigestHex(w.digest), DigestHex(Reference().digest));
}

TEST(WeightsTest, AnyFlippedByteIsRejected) {
  const auto bytes =
      ReadFileBytes(testing::DataPath(fixtures::kReferenceWeights));
  DeterministicRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto bad = bytes;
    const std::size_t pos = 4 + rng.Below(bad.size() - 4);
    bad[pos] ^= 0x40;
    EXPECT_EQ(CodeOf(bad), ErrorCode::kDigestMismatch) << pos;
  }
}

TEST(WeightsTest, HeaderErrors) {
  auto bytes = ReadFileBytes(testing::DataPath(fixtures::kReferenceWeights));
  auto magic = bytes;
  magic[1] = 'X';
  EXPECT_EQ(CodeOf(magic), ErrorCode::kBadMagic);
  auto version = bytes;
  version[4] = 9;
  EXPECT_EQ(CodeOf(Resign(version)), ErrorCode::kBadVersion);
  EXPECT_EQ(CodeOf(std::span(bytes).first(10)), ErrorCode::kTruncated);
  // Cut inside the body but keep a valid digest.
  std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 200);
  cut.resize(cut.size() + 16);
  EXPECT_EQ(CodeOf(Resign(cut)), ErrorCode::kTruncated);
}

TEST(WeightsTest, ManifestCountsEveryParameter) {
  const WeightContainer& w = Reference();
  const ParameterManifest m = BuildManifest(w);
  std::size_t conv = 0;
  for (const auto* net : {&w.encoder, &w.decoder, &w.hyper_encoder,
                          &w.hyper_decoder}) {
    for (const auto& l : *net) {
      conv += static_cast<std::size_t>(l.out_channels) * l.in_channels *
                  l.kernel_h * l.kernel_w + l.out_channels;
    }
  }
  const std::size_t head = static_cast<std::size_t>(w.hyper_feature_channels) *
                               w.latent_channels + w.latent_channels;
  const std::size_t vectors = 3ull * w.levels() * w.latent_channels;
  const std::size_t head2d =
      w.importance_head_2d ? w.importance_head_2d->ParameterCount() : 0;
  EXPECT_EQ(m.total, conv + w.hyper_sigma.size() + head + vectors + head2d);
  EXPECT_EQ(m.selective, head + vectors);
  std::size_t sum = 0;
  for (const auto& row : m.rows) sum += row.parameters;
  EXPECT_EQ(sum, m.total);
}

TEST(WeightsTest, SelectiveOverheadIsSmall) {
  EXPECT_LT(BuildManifest(Reference()).SelectiveFraction(), 0.05);
}

TEST(WeightsTest, ReferenceGeometry) {
  const WeightContainer& w = Reference();
  EXPECT_EQ(w.latent_channels, 32);
  EXPECT_EQ(w.hyper_channels, 8);
  EXPECT_EQ(w.levels(), 8);
  EXPECT_EQ(w.EncoderStride(), 8);
  EXPECT_EQ(w.HyperStride(), 4);
  EXPECT_EQ(w.PadMultiple(), 32);
  EXPECT_TRUE(w.importance_head_2d.has_value());
}

TEST(WeightsTest, ReferenceVectorsAreMonotoneInQuality) {
  const RateVectorTable& t = Reference().rate_vectors;
  for (int level = 1; level < t.levels(); ++level) {
    for (int c = 0; c < t.channels(); ++c) {
      EXPECT_GT(t.gamma(level)[c], t.gamma(level + 1)[c]);
      EXPECT_GT(t.qv(level)[c], t.qv(level + 1)[c]);
    }
  }
}

TEST(WeightsTest, ValidateRejectsBrokenChains) {
  WeightContainer w = Reference();
  w.decoder.back().out_channels = 4;
  EXPECT_THROW(w.Validate(), Error);
  WeightContainer v = Reference();
  v.hyper_sigma.pop_back();
  EXPECT_THROW(SerializeWeights(v), Error);
}

TEST(WeightsTest, ZeroWeightsSerialize) {
  WeightContainer w = MakeZeroWeights();
  const auto bytes = SerializeWeights(w);
  EXPECT_TRUE(LoadWeights(bytes).SameParameters(w));
}

}  // namespace
}  // namespace scr
