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

#ifndef SCR_ANALYTICS_H_
#define SCR_ANALYTICS_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "scr/codec.h"
#include "scr/weights.h"

namespace scr {

// Worker count for corpus-level parallelism: SCR_THREADS if set and
// positive, else the hardware concurrency.
int ThreadBudget();

struct BenchRow {
  double quality = 0.0;
  std::string mode;  // "selective" or "full" (all-ones mask control)
  int repetitions = 0;
  double selection_ratio = 0.0;
  double symbols = 0.0;  // mean y symbols decoded per image
  DecodeTimings mean;
  DecodeTimings stddev;
};

// For every q: encodes each image with the deterministic mask and with the
// all-ones control, then decodes each stream `repetitions` + 1 times on the
// calling thread, discarding the first (warm-up) run. Timing statistics are
// over all kept runs of all images.
std::vector<BenchRow> BenchDecode(const std::vector<Tensor3>& corpus,
                                  const WeightContainer& w,
                                  std::span<const double> qualities,
                                  int repetitions);

void WriteBenchCsv(std::ostream& os, const std::vector<BenchRow>& rows);

struct AnalysisRow {
  std::size_t image = 0;
  int level = 0;
  double bpp = 0.0;
  double selection_ratio = 0.0;
  double psnr = 0.0;
  std::size_t bits_y = 0;
  std::size_t bits_z = 0;
};

struct Analysis {
  int levels = 0;
  std::vector<AnalysisRow> rows;            // image-major, then level
  std::vector<std::vector<double>> reuse;   // [lo-1][hi-1], corpus mean
  std::vector<double> pearson_per_image;    // selection ratio vs bpp over q
  ParameterManifest manifest;

  double MeanBpp(int level) const;
  double MeanSelectionRatio(int level) const;
};

// Runs every integer level over the corpus with the deterministic mask.
// Images are processed concurrently (ThreadBudget() workers).
Analysis AnalyzeCorpus(const std::vector<Tensor3>& corpus,
                       const WeightContainer& w);

void WriteRatioCsv(std::ostream& os, const Analysis& a);
void WriteReuseCsv(std::ostream& os, const Analysis& a);
void WriteManifestCsv(std::ostream& os, const ParameterManifest& m);

double Pearson(std::span<const double> x, std::span<const double> y);

}  // namespace scr

#endif  // SCR_ANALYTICS_H_
