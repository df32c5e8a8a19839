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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "scr/errors.h"
#include "scr/random.h"
#include "test_util.h"

namespace scr {
namespace {

// Four levels, two channels; every family decreasing in q except iqv.
RateVectorTable SmallTable() {
  std::vector<ChannelVector> qv = {ChannelVector({8.0, 4.0}),
                                   ChannelVector({4.0, 2.0}),
                                   ChannelVector({2.0, 0.5}),
                                   ChannelVector({1.0, 0.25})};
  std::vector<ChannelVector> iqv = {ChannelVector({1.0, 1.0}),
                                    ChannelVector({2.0, 1.5}),
                                    ChannelVector({2.0, 0.5}),
                                    ChannelVector({8.0, 2.0})};
  std::vector<ChannelVector> gamma = {ChannelVector({4.0, 3.0}),
                                      ChannelVector({2.0, 2.0}),
                                      ChannelVector({1.0, 1.5}),
                                      ChannelVector({0.5, 0.7})};
  return RateVectorTable(qv, iqv, gamma);
}

TEST(RateVectorTableTest, RejectsInconsistentInput) {
  EXPECT_THROW(RateVectorTable({ChannelVector({1.0})}, {ChannelVector({1.0})},
                               {ChannelVector({0.0})}),
               Error);
  EXPECT_THROW(RateVectorTable({ChannelVector({1.0})},
                               {ChannelVector({1.0, 2.0})},
                               {ChannelVector({1.0})}),
               Error);
  EXPECT_THROW(RateVectorTable({ChannelVector({1.0}), ChannelVector({1.0})},
                               {ChannelVector({1.0})}, {ChannelVector({1.0})}),
               Error);
}

TEST(VectorsAtTest, IntegerLevelIsExactLookup) {
  const RateVectorTable t = SmallTable();
  for (int level = 1; level <= t.levels(); ++level) {
    const QualityVectors v = VectorsAt(t, {static_cast<double>(level)});
    EXPECT_EQ(v.qv, t.qv(level));
    EXPECT_EQ(v.iqv, t.iqv(level));
    EXPECT_EQ(v.gamma, t.gamma(level));
  }
}

TEST(VectorsAtTest, GeometricMidpoint) {
  const QualityVectors v = VectorsAt(SmallTable(), {3.5});
  EXPECT_NEAR(v.iqv[0], 4.0, 1e-12);
  EXPECT_NEAR(v.iqv[1], 1.0, 1e-12);
}

TEST(VectorsAtTest, FractionalWeightsFollowTheFraction) {
  const RateVectorTable t = SmallTable();
  const QualityVectors v = VectorsAt(t, {3.8});
  for (std::size_t c = 0; c < 2; ++c) {
    const double expected =
        std::pow(t.gamma(3)[c], 0.2) * std::pow(t.gamma(4)[c], 0.8);
    EXPECT_NEAR(v.gamma[c], expected, 1e-12 * expected);
  }
}

TEST(VectorsAtTest, RejectsOutOfRange) {
  const RateVectorTable t = SmallTable();
  EXPECT_THROW(VectorsAt(t, {0.99}), Error);
  EXPECT_THROW(VectorsAt(t, {4.01}), Error);
  EXPECT_THROW(VectorsAt(t, {std::nan("")}), Error);
}

TEST(VectorsAtTest, InterpolantStaysInsideNeighbourEnvelope) {
  const RateVectorTable t = SmallTable();
  DeterministicRng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const double q = rng.Uniform(1.0, 4.0);
    const int lo = static_cast<int>(std::floor(q));
    const int hi = std::min(lo + 1, t.levels());
    const QualityVectors v = VectorsAt(t, {q});
    for (std::size_t c = 0; c < 2; ++c) {
      const double a = t.gamma(lo)[c], b = t.gamma(hi)[c];
      EXPECT_GE(v.gamma[c], std::min(a, b) * (1 - 1e-12));
      EXPECT_LE(v.gamma[c], std::max(a, b) * (1 + 1e-12));
    }
  }
}

TEST(VectorsAtTest, ContinuousAcrossIntegerLevels) {
  const RateVectorTable t = SmallTable();
  for (int level = 2; level < t.levels(); ++level) {
    const auto below = VectorsAt(t, {level - 1e-6});
    const auto above = VectorsAt(t, {level + 1e-6});
    const auto at = VectorsAt(t, {static_cast<double>(level)});
    for (std::size_t c = 0; c < 2; ++c) {
      EXPECT_NEAR(below.qv[c], at.qv[c], 1e-4 * at.qv[c]);
      EXPECT_NEAR(above.qv[c], at.qv[c], 1e-4 * at.qv[c]);
      EXPECT_NEAR(below.gamma[c], at.gamma[c], 1e-4 * at.gamma[c]);
      EXPECT_NEAR(above.gamma[c], at.gamma[c], 1e-4 * at.gamma[c]);
    }
  }
}

TEST(AdaQTest, RoundsHalfAwayFromZero) {
  const Tensor3 y({2, 1, 1}, {1.3, -2.7});
  const Tensor3 q = AdaQ(y, ChannelVector({0.5, 1.0}));
  EXPECT_EQ(q, Tensor3({2, 1, 1}, {3.0, -3.0}));
  const Tensor3 ties({1, 1, 4}, {0.5, -0.5, 1.5, -2.5});
  EXPECT_EQ(AdaQ(ties, ChannelVector({1.0})),
            Tensor3({1, 1, 4}, {1.0, -1.0, 2.0, -3.0}));
}

TEST(AdaQTest, ReconstructionErrorBoundedByHalfStep) {
  DeterministicRng rng(22);
  const Shape3 shape{4, 50, 50};
  const Tensor3 y = testing::RandomTensor(rng, shape, 10.0);
  const ChannelVector qv({0.1, 0.7, 1.0, 3.3});
  const Tensor3 back = AdaIQ(AdaQ(y, qv), qv);
  for (int c = 0; c < shape.channels; ++c) {
    for (std::size_t i = 0; i < shape.plane(); ++i) {
      ASSERT_LE(std::abs(back.channel(c)[i] - y.channel(c)[i]),
                qv[c] / 2 + 1e-12);
    }
  }
}

TEST(AdaIQTest, MultipliesByChannel) {
  const Tensor3 y({2, 1, 2}, {3.0, -1.0, 2.0, 0.0});
  EXPECT_EQ(AdaIQ(y, ChannelVector({0.5, 2.0})),
            Tensor3({2, 1, 2}, {1.5, -0.5, 4.0, 0.0}));
}

TEST(AdaQTest, RejectsChannelMismatch) {
  EXPECT_THROW(AdaQ(Tensor3({2, 1, 1}), ChannelVector({1.0})), Error);
}

TEST(LambdaTest, DoublesPerLevel) {
  EXPECT_DOUBLE_EQ(LambdaFor({8}), 0.2);
  EXPECT_DOUBLE_EQ(LambdaFor({7}), 0.1);
  EXPECT_DOUBLE_EQ(LambdaFor({1}), 0.0015625);
}

}  // namespace
}  // namespace scr
