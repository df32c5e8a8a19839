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

#include "scr/analytics.h"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <thread>

#include "scr/errors.h"

namespace scr {
namespace {

struct Accumulator {
  std::vector<DecodeTimings> samples;

  void Add(const DecodeTimings& t) { samples.push_back(t); }

  template <typename F>
  std::pair<double, double> MeanStd(F field) const {
    double sum = 0.0;
    for (const auto& s : samples) sum += field(s);
    const double mean = sum / samples.size();
    double sq = 0.0;
    for (const auto& s : samples) sq += (field(s) - mean) * (field(s) - mean);
    const double sd =
        samples.size() > 1 ? std::sqrt(sq / (samples.size() - 1)) : 0.0;
    return {mean, sd};
  }

  void Summarize(DecodeTimings& mean, DecodeTimings& sd) const {
    auto one = [&](double DecodeTimings::*f) {
      auto [m, s] = MeanStd([f](const DecodeTimings& t) { return t.*f; });
      mean.*f = m;
      sd.*f = s;
    };
    one(&DecodeTimings::hyper_net);
    one(&DecodeTimings::mask_gen);
    one(&DecodeTimings::entropy_decode);
    one(&DecodeTimings::reshape);
    one(&DecodeTimings::decoder_net);
    one(&DecodeTimings::total);
  }
};

}  // namespace

int ThreadBudget() {
  if (const char* env = std::getenv("SCR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRow> BenchDecode(const std::vector<Tensor3>& corpus,
                                  const WeightContainer& w,
                                  std::span<const double> qualities,
                                  int repetitions) {
  if (repetitions < 10) {
    throw Error(ErrorCode::kInvalidArgument, "bench needs >= 10 repetitions");
  }
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "empty corpus");
  std::vector<BenchRow> rows;
  for (double q : qualities) {
    for (const MaskMode mode : {MaskMode::Deterministic(), MaskMode::AllOnes()}) {
      Accumulator acc;
      double ratio = 0.0;
      double symbols = 0.0;
      for (const Tensor3& image : corpus) {
        EncodeOptions opt;
        opt.mask_mode = mode;
        const EncodeResult enc = EncodeContinuous(image, w, q, opt);
        ratio += SelectionRatio(enc.trace.mask);
        for (int r = 0; r <= repetitions; ++r) {
          const DecodeResult dec = DecodeImage(enc.bitstream, w);
          if (r == 0) {
            symbols += static_cast<double>(dec.trace.y_symbols_decoded);
            continue;
          }
          acc.Add(dec.trace.timings);
        }
      }
      BenchRow row;
      row.quality = QuantizeQuality(q) / 256.0;
      row.mode = mode.kind == MaskMode::Kind::kAllOnes ? "full" : "selective";
      row.repetitions = repetitions;
      row.selection_ratio = ratio / corpus.size();
      row.symbols = symbols / corpus.size();
      acc.Summarize(row.mean, row.stddev);
      rows.push_back(row);
    }
  }
  return rows;
}

void WriteBenchCsv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "q,mode,repetitions,selection_ratio,symbols,"
        "hyper_net_ms,mask_gen_ms,entropy_decode_ms,reshape_ms,decoder_net_ms,"
        "total_ms,total_std_ms\n";
  os << std::fixed;
  for (const auto& r : rows) {
    os << std::setprecision(4) << r.quality << "," << r.mode << ","
       << r.repetitions << "," << std::setprecision(6) << r.selection_ratio
       << "," << std::setprecision(1) << r.symbols << std::setprecision(4);
    for (double v : {r.mean.hyper_net, r.mean.mask_gen, r.mean.entropy_decode,
                     r.mean.reshape, r.mean.decoder_net, r.mean.total,
                     r.stddev.total}) {
      os << "," << v * 1e3;
    }
    os << "\n";
  }
}

double Analysis::MeanBpp(int level) const {
  double s = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.level == level) {
      s += r.bpp;
      ++n;
    }
  }
  return n ? s / n : 0.0;
}

double Analysis::MeanSelectionRatio(int level) const {
  double s = 0.0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.level == level) {
      s += r.selection_ratio;
      ++n;
    }
  }
  return n ? s / n : 0.0;
}

Analysis AnalyzeCorpus(const std::vector<Tensor3>& corpus,
                       const WeightContainer& w) {
  const int nq = w.levels();
  Analysis a;
  a.levels = nq;
  a.manifest = BuildManifest(w);
  a.rows.resize(corpus.size() * nq);
  std::vector<std::vector<std::vector<double>>> per_image_reuse(
      corpus.size(), std::vector<std::vector<double>>(
                         nq, std::vector<double>(nq, 0.0)));

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto work = [&]() {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      std::vector<BinaryMask> masks;
      for (int q = 1; q <= nq; ++q) {
        const EncodeResult enc = EncodeImage(corpus[i], w, q);
        const DecodeResult dec = DecodeImage(enc.bitstream, w);
        const RateReport rep = MakeRateReport(enc.bitstream, enc.trace.mask);
        AnalysisRow& row = a.rows[i * nq + (q - 1)];
        row.image = i;
        row.level = q;
        row.bpp = rep.bpp;
        row.selection_ratio = rep.selection_ratio;
        row.psnr = Psnr8Bit(corpus[i], dec.image);
        row.bits_y = rep.bits_y;
        row.bits_z = rep.bits_z;
        masks.push_back(enc.trace.mask);
      }
      for (int lo = 0; lo < nq; ++lo) {
        for (int hi = 0; hi < nq; ++hi) {
          per_image_reuse[i][lo][hi] = ReuseRatio(masks[lo], masks[hi]);
        }
      }
    }
  };
  auto worker = [&]() {
    try {
      work();
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next = corpus.size();
    }
  };
  const int threads =
      std::max(1, std::min<int>(ThreadBudget(), static_cast<int>(corpus.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  a.reuse.assign(nq, std::vector<double>(nq, 0.0));
  for (const auto& m : per_image_reuse) {
    for (int lo = 0; lo < nq; ++lo) {
      for (int hi = 0; hi < nq; ++hi) a.reuse[lo][hi] += m[lo][hi];
    }
  }
  for (auto& row : a.reuse) {
    for (double& v : row) v /= static_cast<double>(corpus.size());
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::vector<double> ratio(nq), bpp(nq);
    for (int q = 0; q < nq; ++q) {
      ratio[q] = a.rows[i * nq + q].selection_ratio;
      bpp[q] = a.rows[i * nq + q].bpp;
    }
    a.pearson_per_image.push_back(Pearson(ratio, bpp));
  }
  return a;
}

void WriteRatioCsv(std::ostream& os, const Analysis& a) {
  os << "image,q,bpp,selection_ratio,psnr,bits_y,bits_z\n" << std::fixed;
  for (const auto& r : a.rows) {
    os << r.image << "," << r.level << "," << std::setprecision(6) << r.bpp
       << "," << r.selection_ratio << "," << std::setprecision(3) << r.psnr
       << "," << r.bits_y << "," << r.bits_z << "\n";
  }
}

void WriteReuseCsv(std::ostream& os, const Analysis& a) {
  os << "q_low,q_high,reuse_ratio\n" << std::fixed << std::setprecision(6);
  for (int lo = 1; lo <= a.levels; ++lo) {
    for (int hi = lo; hi <= a.levels; ++hi) {
      os << lo << "," << hi << "," << a.reuse[lo - 1][hi - 1] << "\n";
    }
  }
}

void WriteManifestCsv(std::ostream& os, const ParameterManifest& m) {
  os << "section,detail,parameters,selective\n";
  for (const auto& r : m.rows) {
    os << r.section << ",\"" << r.detail << "\"," << r.parameters << ","
       << (r.selective ? 1 : 0) << "\n";
  }
  os << "total,," << m.total << ",\n";
  os << "selective_total,," << m.selective << ",\n";
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kShape, "pearson needs two equal series of >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace scr
