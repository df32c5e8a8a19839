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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scr/errors.h"
#include "scr/random.h"
#include "test_util.h"

namespace scr {
namespace {

// Independent oracle: CDF difference written with erf instead of the
// upper-tail form the library uses.
double Phi(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

double OraclePmf(std::int64_t k, double mu, double sigma) {
  return Phi((k + 0.5 - mu) / sigma) - Phi((k - 0.5 - mu) / sigma);
}

double OracleBits(const std::vector<double>& v, const GaussianParams& p) {
  double bits = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double pk = OraclePmf(static_cast<std::int64_t>(v[i]), p.mu[i],
                                p.sigma[i]);
    bits += -std::log2(std::max(pk, std::pow(2.0, -16)));
  }
  return bits;
}

TEST(PmfTest, StandardNormalAtZero) {
  EXPECT_NEAR(Pmf(0, 0.0, 1.0), 0.3829249, 1e-7);
  EXPECT_NEAR(Pmf(0, 0.0, 1.0), OraclePmf(0, 0.0, 1.0), 1e-15);
}

TEST(PmfTest, SymmetricAroundTheMean) {
  DeterministicRng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const double sigma = std::exp(rng.Uniform(-5.0, 4.0));
    const auto k = static_cast<std::int64_t>(rng.Below(60)) - 30;
    EXPECT_NEAR(Pmf(k, 0.0, sigma), Pmf(-k, 0.0, sigma), 1e-15);
    const double mu = std::round(rng.Uniform(-20.0, 20.0));
    EXPECT_EQ(Pmf(k, mu, sigma), Pmf(2 * static_cast<std::int64_t>(mu) - k,
                                     mu, sigma));
  }
}

TEST(PmfTest, SumsToOne) {
  DeterministicRng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const double mu = rng.Uniform(-10.0, 10.0);
    const double sigma = std::exp(rng.Uniform(std::log(1e-4), std::log(50.0)));
    const auto span = static_cast<std::int64_t>(std::ceil(std::abs(mu) + 8 * sigma)) + 1;
    double sum = 0.0;
    for (std::int64_t k = -span; k <= span; ++k) {
      const double p = Pmf(k, mu, sigma);
      ASSERT_GE(p, 0.0);
      sum += p;
    }
    ASSERT_NEAR(sum, 1.0, 1e-9) << mu << " " << sigma;
  }
}

TEST(CrossEntropyTest, EmptyAndSingleElement) {
  EXPECT_EQ(CrossEntropyBits({}, GaussianParams{}), 0.0);
  const std::vector<double> v = {0.0};
  EXPECT_NEAR(CrossEntropyBits(v, GaussianParams{{0.0}, {1.0}}), 1.384867,
              1e-6);
}

TEST(CrossEntropyTest, FarTailIsFloored) {
  const std::vector<double> v = {1000.0};
  EXPECT_DOUBLE_EQ(CrossEntropyBits(v, GaussianParams{{0.0}, {1.0}}), 16.0);
  EXPECT_DOUBLE_EQ(CrossEntropyBits(v, GaussianParams{{0.0}, {1.0}}, 12), 12.0);
}

TEST(CrossEntropyTest, MatchesOracle) {
  DeterministicRng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.Below(40);
    GaussianParams p;
    std::vector<double> v;
    for (std::size_t i = 0; i < n; ++i) {
      p.mu.push_back(rng.Uniform(-8.0, 8.0));
      p.sigma.push_back(std::exp(rng.Uniform(std::log(0.05), std::log(30.0))));
      v.push_back(std::round(p.mu.back() + p.sigma.back() * rng.Normal()));
    }
    const double got = CrossEntropyBits(v, p);
    const double want = OracleBits(v, p);
    ASSERT_NEAR(got, want, 1e-9 * want);
  }
}

TEST(CrossEntropyTest, PermutationInvariant) {
  DeterministicRng rng(4);
  GaussianParams p;
  std::vector<double> v;
  for (int i = 0; i < 200; ++i) {
    p.mu.push_back(rng.Uniform(-3.0, 3.0));
    p.sigma.push_back(rng.Uniform(0.2, 5.0));
    v.push_back(std::round(rng.Uniform(-10.0, 10.0)));
  }
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.Below(i + 1)]);
  }
  GaussianParams q;
  std::vector<double> w;
  for (std::size_t i : perm) {
    q.mu.push_back(p.mu[i]);
    q.sigma.push_back(p.sigma[i]);
    w.push_back(v[i]);
  }
  const double a = CrossEntropyBits(v, p);
  EXPECT_NEAR(CrossEntropyBits(w, q), a, 1e-9 * a);
}

TEST(CrossEntropyTest, RejectsNonIntegersAndLengthMismatch) {
  const std::vector<double> v = {0.5};
  EXPECT_THROW(CrossEntropyBits(v, GaussianParams{{0.0}, {1.0}}), Error);
  EXPECT_THROW(CrossEntropyBits(v, GaussianParams{}), Error);
}

TEST(MaskedParamsTest, ScalesAndGathers) {
  const Tensor3 mu({2, 1, 1}, {1.0, 2.0});
  const Tensor3 sigma({2, 1, 1}, {1.0, 1.0});
  const BinaryMask mask({2, 1, 1}, {0, 1});
  const GaussianParams p =
      MaskedParams(mu, sigma, ChannelVector({0.5, 0.5}), mask, false);
  EXPECT_EQ(p.mu, std::vector<double>{4.0});
  EXPECT_EQ(p.sigma, std::vector<double>{2.0});
  const GaussianParams z =
      MaskedParams(mu, sigma, ChannelVector({0.5, 0.5}), mask, true);
  EXPECT_EQ(z.mu, std::vector<double>{0.0});
}

TEST(MaskedParamsTest, PassThroughWithUnitSteps) {
  DeterministicRng rng(5);
  const Shape3 shape{3, 4, 5};
  const Tensor3 mu = testing::RandomTensor(rng, shape);
  Tensor3 sigma(shape);
  for (double& s : sigma.data()) s = rng.Uniform(0.1, 3.0);
  const GaussianParams p = MaskedParams(
      mu, sigma, ChannelVector({1.0, 1.0, 1.0}), BinaryMask(shape, true), false);
  EXPECT_TRUE(std::equal(p.mu.begin(), p.mu.end(), mu.data().begin()));
  EXPECT_TRUE(std::equal(p.sigma.begin(), p.sigma.end(), sigma.data().begin()));
}

TEST(MaskedParamsTest, OrderingFollowsSelect) {
  DeterministicRng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const Shape3 shape = testing::RandomShape(rng);
    const Tensor3 mu = testing::RandomTensor(rng, shape);
    Tensor3 sigma(shape);
    for (double& s : sigma.data()) s = rng.Uniform(0.1, 3.0);
    std::vector<double> qv(shape.channels);
    for (double& q : qv) q = rng.Uniform(0.2, 2.0);
    const BinaryMask mask = testing::RandomMask(rng, shape, 0.4);
    const GaussianParams p =
        MaskedParams(mu, sigma, ChannelVector(qv), mask, false);
    // Index scan oracle.
    std::size_t j = 0;
    for (int c = 0; c < shape.channels; ++c) {
      for (int y = 0; y < shape.height; ++y) {
        for (int x = 0; x < shape.width; ++x) {
          if (!mask.at(c, y, x)) continue;
          ASSERT_EQ(p.mu[j], mu.at(c, y, x) / qv[c]);
          ASSERT_EQ(p.sigma[j], std::max(sigma.at(c, y, x) / qv[c], 1e-4));
          ++j;
        }
      }
    }
    ASSERT_EQ(j, p.size());
  }
}

TEST(MaskedParamsTest, FloorsSigma) {
  const Tensor3 mu({1, 1, 1}, 0.0);
  const Tensor3 sigma({1, 1, 1}, 0.0);
  const GaussianParams p = MaskedParams(mu, sigma, ChannelVector({1.0}),
                                        BinaryMask({1, 1, 1}, true), false);
  EXPECT_EQ(p.sigma[0], kSigmaFloor);
}

TEST(DiscretizeCdfTest, DegenerateSpike) {
  const DiscretizedCdf cdf = DiscretizeCdf(0.0, kSigmaFloor);
  EXPECT_EQ(cdf.lo, -1);
  EXPECT_EQ(cdf.hi, 1);
  EXPECT_EQ(cdf.symbol_count(), 4u);
  EXPECT_GE(cdf.frequency(cdf.IndexOf(0)), (1u << 16) - 3);
  EXPECT_EQ(cdf.IndexOf(5), cdf.escape_index());
}

TEST(DiscretizeCdfTest, TotalsAndStrictMonotonicity) {
  DeterministicRng rng(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const double mu = rng.Uniform(-1000.0, 1000.0);
    const double sigma = std::exp(rng.Uniform(std::log(1e-5), std::log(1e4)));
    const int precision = trial % 10 == 0 ? 8 + static_cast<int>(rng.Below(9))
                                          : kDefaultPrecision;
    const DiscretizedCdf cdf = DiscretizeCdf(mu, sigma, precision);
    ASSERT_EQ(cdf.cdf.front(), 0u);
    ASSERT_EQ(cdf.cdf.back(), 1u << precision);
    ASSERT_LE(cdf.symbol_count(), (std::size_t{1} << (precision - 2)) + 1);
    for (std::size_t i = 1; i < cdf.cdf.size(); ++i) {
      ASSERT_LT(cdf.cdf[i - 1], cdf.cdf[i]);
    }
  }
}

TEST(DiscretizeCdfTest, FrequenciesTrackProbabilities) {
  const DiscretizedCdf cdf = DiscretizeCdf(0.3, 2.0);
  for (std::int64_t k = cdf.lo; k <= cdf.hi; ++k) {
    const double f = cdf.frequency(cdf.IndexOf(k)) / 65536.0;
    EXPECT_NEAR(f, Pmf(k, 0.3, 2.0), 1e-3);
  }
}

TEST(DiscretizeCdfTest, RejectsBadInput) {
  EXPECT_THROW(DiscretizeCdf(0.0, 1.0, 7), Error);
  EXPECT_THROW(DiscretizeCdf(0.0, 1.0, 17), Error);
  EXPECT_THROW(DiscretizeCdf(std::nan(""), 1.0), Error);
}

}  // namespace
}  // namespace scr
