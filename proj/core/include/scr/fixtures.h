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

#ifndef SCR_FIXTURES_H_
#define SCR_FIXTURES_H_

// Names and generators for the committed regression fixtures, shared by the
// fixture writer and the tests that read them back.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "scr/bytes.h"
#include "scr/entropy_model.h"
#include "scr/random.h"
#include "scr/tensor.h"

namespace scr::fixtures {

inline constexpr char kReferenceWeights[] = "reference.scrw";
inline constexpr char kGoldenImage[] = "golden.png";
inline constexpr char kGoldenLatent[] = "golden_y.f32";
inline constexpr char kGoldenBitstream[] = "golden_q4.scr";
inline constexpr char kGoldenReconstruction[] = "golden_q4_recon.f32";
inline constexpr char kRangeCoderGolden[] = "range_coder_golden.bin";

inline constexpr std::uint64_t kGoldenImageSeed = 4242;
inline constexpr int kGoldenImageSize = 64;
inline constexpr int kGoldenLevel = 4;

inline std::vector<std::uint8_t> ToFloat32Bytes(const Tensor3& t) {
  ByteWriter w;
  for (double v : t.data()) w.F32(static_cast<float>(v));
  return w.Take();
}

inline std::vector<double> FromFloat32Bytes(std::span<const std::uint8_t> b) {
  ByteReader r(b);
  std::vector<double> out(b.size() / 4);
  for (double& v : out) v = r.F32();
  return out;
}

struct SymbolSequence {
  std::vector<std::int64_t> symbols;
  std::vector<DiscretizedCdf> cdfs;
};

// 600 Gaussian-distributed symbols over mixed (mu, sigma), with every 50th
// symbol forced far outside its support to exercise the escape path.
inline SymbolSequence RangeCoderGoldenInput() {
  DeterministicRng rng(1);
  SymbolSequence s;
  for (int i = 0; i < 600; ++i) {
    const double mu = rng.Uniform(-5.0, 5.0);
    const double sigma = std::exp(rng.Uniform(std::log(0.05), std::log(20.0)));
    auto value = static_cast<std::int64_t>(std::round(mu + sigma * rng.Normal()));
    if (i % 50 == 49) value = (i % 100 == 99 ? -1 : 1) * (100000 + i);
    s.symbols.push_back(value);
    s.cdfs.push_back(DiscretizeCdf(mu, sigma));
  }
  return s;
}

}  // namespace scr::fixtures

#endif  // SCR_FIXTURES_H_
