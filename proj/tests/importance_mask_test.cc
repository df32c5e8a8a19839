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

#include "scr/importance_mask.h"

#include <gtest/gtest.h>

#include <cmath>

#include "scr/errors.h"
#include "scr/random.h"

namespace scr {
namespace {

ImportanceMap Constant(Shape3 shape, double v) {
  return ImportanceMap(Tensor3(shape, v));
}

ImportanceMap RandomOpenMap(DeterministicRng& rng, Shape3 shape) {
  Tensor3 t(shape);
  for (double& v : t.data()) v = rng.Uniform(1e-6, 1.0 - 1e-6);
  return ImportanceMap(std::move(t));
}

ConvLayerParams ZeroHead(int in, int out, float bias) {
  ConvLayerParams p;
  p.in_channels = in;
  p.out_channels = out;
  p.kernel.assign(static_cast<std::size_t>(in) * out, 0.0f);
  p.bias.assign(out, bias);
  return p;
}

TEST(ImportanceHeadTest, ZeroWeightsGiveBias) {
  DeterministicRng rng(1);
  Tensor3 features({5, 3, 4});
  for (double& v : features.data()) v = rng.Normal();
  const ImportanceMap im = ImportanceHead(features, ZeroHead(5, 2, 0.7f));
  EXPECT_EQ(im.shape(), (Shape3{2, 3, 4}));
  for (double v : im.values().data()) EXPECT_NEAR(v, 0.7, 1e-7);
}

TEST(ImportanceHeadTest, ClipsAtOne) {
  const Tensor3 features({5, 2, 2}, 1.0);
  const ImportanceMap im = ImportanceHead(features, ZeroHead(5, 3, 2.0f));
  for (double v : im.values().data()) EXPECT_EQ(v, 1.0);
}

TEST(ImportanceHeadTest, RejectsChannelMismatchAndLargeKernels) {
  const Tensor3 features({4, 2, 2}, 1.0);
  EXPECT_THROW(ImportanceHead(features, ZeroHead(5, 3, 0.0f)), Error);
  ConvLayerParams k3 = ZeroHead(4, 3, 0.0f);
  k3.kernel_h = k3.kernel_w = 3;
  k3.kernel.assign(4 * 3 * 9, 0.0f);
  EXPECT_THROW(ImportanceHead(features, k3), Error);
}

TEST(ImportanceMapTest, RejectsOutOfRangeValues) {
  EXPECT_THROW(ImportanceMap(Tensor3({1, 1, 1}, 1.01)), Error);
  EXPECT_THROW(ImportanceMap(Tensor3({1, 1, 1}, -0.01)), Error);
  EXPECT_THROW(ImportanceMap(Tensor3({1, 1, 1}, std::nan(""))), Error);
}

TEST(AdjustTest, PowerRuleIdentityAndFixedPoints) {
  EXPECT_EQ(Adjust(Constant({1, 1, 1}, 0.5), ChannelVector({2.0}))
                .values()
                .data()[0],
            0.25);
  const ImportanceMap im(Tensor3({2, 1, 3}, {0.0, 0.3, 1.0, 0.9, 0.5, 0.1}));
  EXPECT_EQ(Adjust(im, ChannelVector({1.0, 1.0})).values(), im.values());
  for (double g : {0.01, 0.5, 3.0, 100.0}) {
    const Tensor3 out = Adjust(im, ChannelVector({g, g})).values();
    EXPECT_EQ(out.at(0, 0, 0), 0.0);
    EXPECT_EQ(out.at(0, 0, 2), 1.0);
  }
}

TEST(AdjustTest, RejectsNonPositiveGammaAndBadLength) {
  const ImportanceMap im = Constant({2, 1, 1}, 0.5);
  EXPECT_THROW(Adjust(im, ChannelVector({1.0, 0.0})), Error);
  EXPECT_THROW(Adjust(im, ChannelVector({1.0, -1.0})), Error);
  EXPECT_THROW(Adjust(im, ChannelVector({1.0})), Error);
}

TEST(AdjustTest, LargerGammaNeverSelectsMore) {
  DeterministicRng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const ImportanceMap im = RandomOpenMap(rng, {4, 6, 6});
    std::vector<double> g(4);
    for (double& v : g) v = std::exp(rng.Uniform(-2.0, 2.0));
    const double t = 1.0 + rng.Uniform(0.0, 3.0);
    std::vector<double> gt = g;
    for (double& v : gt) v *= t;
    const ImportanceMap a = Adjust(im, ChannelVector(g));
    const ImportanceMap b = Adjust(im, ChannelVector(gt));
    for (std::size_t i = 0; i < im.values().size(); ++i) {
      ASSERT_LT(b.values().data()[i], a.values().data()[i]);
    }
    ASSERT_LE(SelectionRatio(Binarize(b)), SelectionRatio(Binarize(a)));
  }
}

TEST(BinarizeTest, ThresholdAndTie) {
  const ImportanceMap im(Tensor3({1, 1, 3}, {0.49, 0.51, 0.5}));
  EXPECT_EQ(Binarize(im), BinaryMask({1, 1, 3}, {0, 1, 1}));
}

TEST(StochasticBinarizeTest, DegenerateProbabilities) {
  EXPECT_EQ(StochasticBinarize(Constant({3, 10, 10}, 0.0), 9).Popcount(), 0u);
  EXPECT_EQ(StochasticBinarize(Constant({3, 10, 10}, 1.0), 9).Popcount(),
            300u);
}

TEST(StochasticBinarizeTest, EmpiricalMeanMatchesProbability) {
  const BinaryMask m = StochasticBinarize(Constant({1, 100, 1000}, 0.3), 77);
  EXPECT_NEAR(SelectionRatio(m), 0.3, 0.005);
}

TEST(StochasticBinarizeTest, SameSeedSameMask) {
  DeterministicRng rng(3);
  const ImportanceMap im = RandomOpenMap(rng, {4, 8, 8});
  EXPECT_EQ(StochasticBinarize(im, 123), StochasticBinarize(im, 123));
  EXPECT_NE(StochasticBinarize(im, 123), StochasticBinarize(im, 124));
}

TEST(StochasticBinarizeTest, ModeMatchesDeterministicMask) {
  DeterministicRng rng(4);
  Tensor3 t({2, 4, 4});
  // Keep clear of 0.5 so 400 draws settle the majority.
  for (double& v : t.data()) {
    v = rng.Uniform() < 0.5 ? rng.Uniform(0.0, 0.4) : rng.Uniform(0.6, 1.0);
  }
  const ImportanceMap im(t);
  std::vector<int> ones(t.size(), 0);
  constexpr int kDraws = 401;
  for (int s = 0; s < kDraws; ++s) {
    const BinaryMask m = StochasticBinarize(im, 1000 + s);
    for (std::size_t i = 0; i < m.size(); ++i) ones[i] += m.get(i);
  }
  const BinaryMask det = Binarize(im);
  for (std::size_t i = 0; i < det.size(); ++i) {
    EXPECT_EQ(ones[i] * 2 > kDraws, det.get(i)) << i;
  }
}

TEST(MaskFrom2dTest, ChannelPrefixes) {
  EXPECT_EQ(MaskFrom2dImportance(Tensor3({1, 3, 3}, 1.0), 4).Popcount(), 36u);
  EXPECT_EQ(MaskFrom2dImportance(Tensor3({1, 3, 3}, 0.0), 4).Popcount(), 0u);
  const BinaryMask half = MaskFrom2dImportance(Tensor3({1, 3, 3}, 0.5), 4);
  for (int c = 0; c < 4; ++c) {
    for (int y = 0; y < 3; ++y) {
      for (int x = 0; x < 3; ++x) EXPECT_EQ(half.at(c, y, x), c < 2);
    }
  }
  EXPECT_THROW(MaskFrom2dImportance(Tensor3({2, 3, 3}, 0.5), 4), Error);
  EXPECT_THROW(MaskFrom2dImportance(Tensor3({1, 3, 3}, 1.5), 4), Error);
}

TEST(SelectionStatsTest, Ratios) {
  EXPECT_EQ(SelectionRatio(BinaryMask({2, 3, 3}, true)), 1.0);
  EXPECT_EQ(SelectionRatio(BinaryMask({2, 3, 3}, false)), 0.0);
  EXPECT_EQ(SelectionRatio(BinaryMask({1, 1, 4}, {1, 0, 0, 1})), 0.5);
}

TEST(ReuseRatioTest, SupersetDisjointAndEmpty) {
  const BinaryMask lo({1, 1, 4}, {1, 1, 0, 0});
  EXPECT_EQ(ReuseRatio(lo, BinaryMask({1, 1, 4}, {1, 1, 1, 0})), 1.0);
  EXPECT_EQ(ReuseRatio(lo, BinaryMask({1, 1, 4}, {0, 0, 1, 1})), 0.0);
  EXPECT_EQ(ReuseRatio(lo, BinaryMask({1, 1, 4}, {0, 1, 1, 1})), 0.5);
  EXPECT_EQ(ReuseRatio(BinaryMask({1, 1, 4}, false), lo), 1.0);
  EXPECT_THROW(ReuseRatio(lo, BinaryMask({1, 1, 5})), Error);
}

}  // namespace
}  // namespace scr
