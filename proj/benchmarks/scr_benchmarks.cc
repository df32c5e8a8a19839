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

#include <benchmark/benchmark.h>

#include <cmath>

#include "scr/codec.h"
#include "scr/conv.h"
#include "scr/entropy_model.h"
#include "scr/fixtures.h"
#include "scr/random.h"
#include "scr/range_coder.h"
#include "scr/synthetic_image.h"

namespace {

using namespace scr;

const WeightContainer& Reference() {
  static const WeightContainer w = LoadWeightsFile(
      std::string(SCR_TEST_DATA_DIR) + "/" + fixtures::kReferenceWeights);
  return w;
}

struct Stream {
  std::vector<std::int64_t> symbols;
  std::vector<DiscretizedCdf> cdfs;
};

Stream MakeStream(std::size_t n) {
  DeterministicRng rng(1);
  Stream s;
  for (std::size_t i = 0; i < n; ++i) {
    const double mu = rng.Uniform(-3.0, 3.0);
    const double sigma = std::exp(rng.Uniform(-2.0, 3.0));
    s.symbols.push_back(std::llround(mu + sigma * rng.Normal()));
    s.cdfs.push_back(DiscretizeCdf(mu, sigma));
  }
  return s;
}

void BM_DiscretizeCdf(benchmark::State& state) {
  const double sigma = static_cast<double>(state.range(0)) / 10.0;
  double mu = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DiscretizeCdf(mu, sigma));
    mu += 0.01;
  }
}
BENCHMARK(BM_DiscretizeCdf)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_RangeEncode(benchmark::State& state) {
  const Stream s = MakeStream(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EncodeSymbols(s.symbols, s.cdfs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RangeEncode)->Arg(1 << 12)->Arg(1 << 16);

void BM_RangeDecode(benchmark::State& state) {
  const Stream s = MakeStream(state.range(0));
  const CodedStream coded = EncodeSymbols(s.symbols, s.cdfs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(DecodeSymbols(coded, s.cdfs));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RangeDecode)->Arg(1 << 12)->Arg(1 << 16);

void BM_DecoderFirstLayer(benchmark::State& state) {
  const ConvLayerParams& layer = Reference().decoder.front();
  DeterministicRng rng(2);
  Tensor3 y({layer.in_channels, static_cast<int>(state.range(0)),
             static_cast<int>(state.range(0))});
  for (double& v : y.data()) v = rng.Normal();
  for (auto _ : state) benchmark::DoNotOptimize(ApplyConv(layer, y));
}
BENCHMARK(BM_DecoderFirstLayer)->Arg(8)->Arg(32);

void BM_Encode(benchmark::State& state) {
  const Tensor3 image = SyntheticImage(3, 128, 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EncodeImage(image, Reference(), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Encode)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Decode(benchmark::State& state) {
  const Tensor3 image = SyntheticImage(3, 128, 128);
  EncodeOptions opt;
  if (state.range(1)) opt.mask_mode = MaskMode::AllOnes();
  const ScrBitstream bs =
      EncodeImage(image, Reference(), static_cast<int>(state.range(0)), opt)
          .bitstream;
  for (auto _ : state) benchmark::DoNotOptimize(DecodeImage(bs, Reference()));
}
BENCHMARK(BM_Decode)
    ->ArgsProduct({{1, 4, 8}, {0, 1}})
    ->ArgNames({"q", "all_ones"})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
