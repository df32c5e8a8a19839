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

#include "scr/tensor.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "scr/errors.h"
#include "test_util.h"

namespace scr {
namespace {

using testing::RandomMask;
using testing::RandomShape;
using testing::RandomTensor;

TEST(SelectTest, PicksMaskedValuesInRowMajorOrder) {
  const Tensor3 rep({1, 2, 2}, {1, 2, 3, 4});
  const BinaryMask mask({1, 2, 2}, {1, 0, 0, 1});
  EXPECT_EQ(Select(rep, mask).values, (std::vector<double>{1, 4}));
}

TEST(SelectTest, AllOnesMaskFlattens) {
  DeterministicRng rng(3);
  const Tensor3 rep = RandomTensor(rng, {3, 4, 5});
  const BinaryMask mask({3, 4, 5}, true);
  const auto sel = Select(rep, mask);
  EXPECT_TRUE(std::equal(sel.values.begin(), sel.values.end(),
                         rep.data().begin(), rep.data().end()));
}

TEST(SelectTest, ShapeMismatchIsRejected) {
  const Tensor3 rep({1, 2, 2});
  const BinaryMask mask({1, 2, 3});
  try {
    Select(rep, mask);
    FAIL() << "expected shape error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShape);
  }
}

TEST(SelectTest, LengthEqualsPopcountByIndexScan) {
  DeterministicRng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const Shape3 shape = RandomShape(rng);
    const Tensor3 rep = RandomTensor(rng, shape);
    const BinaryMask mask = RandomMask(rng, shape, rng.Uniform());
    std::size_t expected = 0;
    for (int c = 0; c < shape.channels; ++c) {
      for (int y = 0; y < shape.height; ++y) {
        for (int x = 0; x < shape.width; ++x) expected += mask.at(c, y, x);
      }
    }
    ASSERT_EQ(Select(rep, mask).count(), expected);
  }
}

TEST(ReshapeTest, ScattersAndZeroFills) {
  const BinaryMask mask({1, 2, 2}, {1, 0, 0, 1});
  const Tensor3 out = ReshapeInPlace({{1, 4}}, mask);
  EXPECT_EQ(out, Tensor3({1, 2, 2}, {1, 0, 0, 4}));
}

TEST(ReshapeTest, EmptySelectionGivesZeros) {
  const BinaryMask mask({2, 3, 3}, false);
  const Tensor3 out = ReshapeInPlace({}, mask);
  for (double v : out.data()) EXPECT_EQ(v, 0.0);
}

TEST(ReshapeTest, CountMismatchIsRejected) {
  const BinaryMask mask({1, 2, 2}, {1, 0, 0, 1});
  EXPECT_THROW(ReshapeInPlace({{1, 2, 3}}, mask), Error);
}

TEST(SelectReshapeProperty, ReshapeOfSelectIsMaskedInputBitExact) {
  DeterministicRng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const Shape3 shape = RandomShape(rng);
    const Tensor3 x = RandomTensor(rng, shape);
    const BinaryMask mask = RandomMask(rng, shape, rng.Uniform());
    const Tensor3 back = ReshapeInPlace(Select(x, mask), mask);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double expected = mask.get(i) ? x.data()[i] : 0.0;
      ASSERT_EQ(std::memcmp(&back.data()[i], &expected, sizeof(double)), 0);
    }
  }
}

TEST(SelectReshapeProperty, SelectOfReshapeIsIdentity) {
  DeterministicRng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const Shape3 shape = RandomShape(rng);
    const BinaryMask mask = RandomMask(rng, shape, rng.Uniform());
    SelectedElements s;
    for (std::size_t i = 0; i < mask.Popcount(); ++i) {
      s.values.push_back(rng.Normal());
    }
    ASSERT_EQ(Select(ReshapeInPlace(s, mask), mask), s);
  }
}

TEST(ChannelwiseScaleTest, MultipliesPerChannel) {
  const Tensor3 t({2, 2, 2}, 1.0);
  const Tensor3 out =
      ChannelwiseScale(t, ChannelVector({2.0, 3.0}), ScaleMode::kMultiply);
  for (double v : out.channel(0)) EXPECT_EQ(v, 2.0);
  for (double v : out.channel(1)) EXPECT_EQ(v, 3.0);
}

TEST(ChannelwiseScaleTest, UnitVectorIsIdentity) {
  DeterministicRng rng(5);
  const Tensor3 t = RandomTensor(rng, {4, 3, 3});
  const ChannelVector ones(std::vector<double>(4, 1.0));
  EXPECT_EQ(ChannelwiseScale(t, ones, ScaleMode::kMultiply), t);
  EXPECT_EQ(ChannelwiseScale(t, ones, ScaleMode::kDivide), t);
}

TEST(ChannelwiseScaleTest, MultiplyThenDivideRoundTrips) {
  DeterministicRng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor3 t = RandomTensor(rng, {5, 4, 4});
    std::vector<double> v(5);
    for (double& s : v) s = std::exp(rng.Uniform(-4.0, 4.0));
    const ChannelVector cv(v);
    const Tensor3 back = ChannelwiseScale(
        ChannelwiseScale(t, cv, ScaleMode::kMultiply), cv, ScaleMode::kDivide);
    for (std::size_t i = 0; i < t.size(); ++i) {
      ASSERT_NEAR(back.data()[i], t.data()[i], 1e-12 * std::abs(t.data()[i]));
    }
  }
}

TEST(ChannelwiseScaleTest, RejectsLengthMismatchAndZeroDivisor) {
  const Tensor3 t({2, 1, 1}, 1.0);
  EXPECT_THROW(ChannelwiseScale(t, ChannelVector({1.0}), ScaleMode::kMultiply),
               Error);
  try {
    ChannelwiseScale(t, ChannelVector({1.0, 0.0}), ScaleMode::kDivide);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(TensorTest, RejectsWrongDataLengthAndBadMaskBits) {
  EXPECT_THROW(Tensor3({1, 2, 2}, std::vector<double>{1, 2, 3}), Error);
  EXPECT_THROW(BinaryMask({1, 1, 2}, std::vector<std::uint8_t>{0, 2}), Error);
  EXPECT_THROW(Tensor3({0, 2, 2}), Error);
}

}  // namespace
}  // namespace scr
