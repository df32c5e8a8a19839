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

// scr: command line front end for the selective latent codec.
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 format error, 3 digest mismatch.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "scr/analytics.h"
#include "scr/bytes.h"
#include "scr/codec.h"
#include "scr/container.h"
#include "scr/errors.h"
#include "scr/image_io.h"
#include "scr/reference_model.h"
#include "scr/synthetic_image.h"
#include "scr/weights.h"

namespace {

namespace fs = std::filesystem;

int ExitCodeFor(scr::ErrorCode code) {
  switch (code) {
    case scr::ErrorCode::kBadMagic:
    case scr::ErrorCode::kBadVersion:
    case scr::ErrorCode::kTruncated:
    case scr::ErrorCode::kCorruptStream:
    case scr::ErrorCode::kUnsupported:
      return 2;
    case scr::ErrorCode::kDigestMismatch:
      return 3;
    default:
      return 1;
  }
}

scr::MaskMode ParseMaskMode(const std::string& s) {
  if (s == "det") return scr::MaskMode::Deterministic();
  if (s == "2d") return scr::MaskMode::Baseline2d();
  if (s == "full") return scr::MaskMode::AllOnes();
  if (s.rfind("stoch:", 0) == 0) {
    const std::string digits = s.substr(6);
    std::size_t used = 0;
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && !digits.empty()) {
      return scr::MaskMode::Stochastic(seed);
    }
  }
  throw scr::Error(scr::ErrorCode::kInvalidArgument,
                   "mask mode must be det, stoch:SEED, 2d or full");
}

std::vector<scr::Tensor3> LoadCorpus(const std::string& dir, int synthetic,
                                     int size) {
  std::vector<scr::Tensor3> corpus;
  if (!dir.empty()) {
    for (const auto& p : scr::ListImages(dir)) corpus.push_back(scr::ReadImage(p));
  }
  if (synthetic > 0) {
    auto extra = scr::SyntheticCorpus(7, synthetic, size, size);
    corpus.insert(corpus.end(), extra.begin(), extra.end());
  }
  if (corpus.empty()) {
    throw scr::Error(scr::ErrorCode::kInvalidArgument,
                     "no images: pass --corpus DIR and/or --synthetic N");
  }
  return corpus;
}

void PrintReport(const scr::RateReport& r) {
  std::cout << std::fixed << std::setprecision(6) << "pixels " << r.pixels
            << "\nbits_total " << r.bits_total << " (header " << r.bits_header
            << ", z " << r.bits_z << ", y " << r.bits_y << ")\nbpp " << r.bpp
            << "\nselection_ratio " << r.selection_ratio << "\n";
  if (r.psnr) std::cout << "psnr " << std::setprecision(3) << *r.psnr << "\n";
}

void Inspect(const std::string& path) {
  const auto bytes = scr::ReadFileBytes(path);
  if (bytes.size() >= 4 && std::string(bytes.begin(), bytes.begin() + 4) == "SCRW") {
    const scr::WeightContainer w = scr::LoadWeights(bytes);
    std::cout << "weight container " << path << "\n"
              << "digest " << scr::DigestHex(w.digest) << "\n"
              << "latent_channels " << w.latent_channels << "\n"
              << "hyper_channels " << w.hyper_channels << "\n"
              << "levels " << w.levels() << "\n"
              << "pad_multiple " << w.PadMultiple() << "\n";
    const auto m = scr::BuildManifest(w);
    scr::WriteManifestCsv(std::cout, m);
    std::cout << "selective_fraction " << std::setprecision(4)
              << 100.0 * m.SelectiveFraction() << "%\n";
    return;
  }
  const scr::ScrBitstream bs = scr::ReadBitstream(bytes);
  const auto& h = bs.header;
  const auto sizes = scr::Sizes(bs);
  std::cout << "bitstream " << path << "\n"
            << "version " << int{h.version} << "\n"
            << "quality " << h.quality() << " (fixed " << h.quality_fixed
            << ")\n"
            << "mask_mode " << scr::MaskModeName(h.mask_mode.kind);
  if (h.mask_mode.kind == scr::MaskMode::Kind::kStochastic) {
    std::cout << " seed " << h.mask_mode.seed;
  }
  std::cout << "\nzero_mean " << (h.zero_mean ? 1 : 0) << "\n"
            << "image " << h.image_width << "x" << h.image_height << "\n"
            << "latent " << h.latent.channels << "x" << h.latent.height << "x"
            << h.latent.width << "\n"
            << "hyper " << h.hyper.channels << "x" << h.hyper.height << "x"
            << h.hyper.width << "\n"
            << "model_id " << scr::DigestHex(h.model_id) << "\n"
            << "bytes " << bytes.size() << " (header+framing "
            << sizes.header_bits / 8 << ", z " << sizes.z_bits / 8 << ", y "
            << sizes.y_bits / 8 << ")\n"
            << "bpp " << std::setprecision(6)
            << 8.0 * bytes.size() / (double(h.image_width) * h.image_height)
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selective latent codec with continuous variable rate"};
  app.require_subcommand(1);

  std::string in, out, weights, mask_mode = "det", corpus_dir, original;
  double quality = 8.0;
  bool zero_mean = false;
  int synthetic = 0, size = 64, reps = 10;
  std::uint64_t seed = scr::ReferenceConfig{}.seed;
  std::vector<double> qualities{1.0, 8.0};

  auto* enc = app.add_subcommand("encode", "Encode an image into a .scr file");
  enc->add_option("-i,--input", in, "PNG/PPM image")->required();
  enc->add_option("-w,--weights", weights, ".scrw weight container")->required();
  enc->add_option("-q,--quality", quality, "Quality level in [1, N_Q]")
      ->required();
  enc->add_option("--mask-mode", mask_mode, "det | stoch:SEED | 2d | full");
  enc->add_flag("--zero-mean", zero_mean, "Ignore predicted means");
  enc->add_option("-o,--output", out, "Output .scr")->required();

  auto* dec = app.add_subcommand("decode", "Decode a .scr file to an image");
  dec->add_option("-i,--input", in, ".scr bitstream")->required();
  dec->add_option("-w,--weights", weights, ".scrw weight container")->required();
  dec->add_option("-o,--output", out, "Output .png or .ppm")->required();
  dec->add_option("--original", original, "Reference image for PSNR");

  auto* bench = app.add_subcommand("bench", "Decode-time benchmark (CSV)");
  bench->add_option("-w,--weights", weights)->required();
  bench->add_option("-c,--corpus", corpus_dir, "Directory of images");
  bench->add_option("--synthetic", synthetic, "Add N synthetic images");
  bench->add_option("--size", size, "Synthetic image size");
  bench->add_option("-q,--quality", qualities, "Quality levels")->expected(1, -1);
  bench->add_option("-r,--repetitions", reps, "Timed runs per stream (>= 10)");
  bench->add_option("-o,--output", out, "CSV path (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Selection/reuse/rate analytics");
  analyze->add_option("-w,--weights", weights)->required();
  analyze->add_option("-c,--corpus", corpus_dir, "Directory of images");
  analyze->add_option("--synthetic", synthetic, "Add N synthetic images");
  analyze->add_option("--size", size, "Synthetic image size");
  analyze->add_option("-o,--output", out, "Output directory")->required();

  auto* inspect = app.add_subcommand("inspect", "Dump a .scr header or .scrw manifest");
  inspect->add_option("file", in)->required();

  auto* make_ref = app.add_subcommand("make-reference",
                                      "Write the seeded reference weights");
  make_ref->add_option("--seed", seed);
  make_ref->add_option("-o,--output", out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) {
      const auto w = scr::LoadWeightsFile(weights);
      scr::EncodeOptions opt;
      opt.mask_mode = ParseMaskMode(mask_mode);
      opt.zero_mean = zero_mean;
      const auto image = scr::ReadImage(in);
      const auto result = scr::EncodeContinuous(image, w, quality, opt);
      scr::WriteFileBytes(out, scr::WriteBitstream(result.bitstream));
      PrintReport(scr::MakeRateReport(result.bitstream, result.trace.mask));
    } else if (*dec) {
      const auto w = scr::LoadWeightsFile(weights);
      const auto bytes = scr::ReadFileBytes(in);
      const auto bs = scr::ReadBitstream(bytes);
      const auto result = scr::DecodeImage(bs, w);
      scr::WriteImage(out, result.image);
      auto report = scr::MakeRateReport(bs, result.trace.mask);
      report.decode = result.trace.timings;
      if (!original.empty()) {
        report.psnr = scr::Psnr8Bit(scr::ReadImage(original), result.image);
      }
      PrintReport(report);
      const auto& t = report.decode;
      std::cout << std::setprecision(3) << "decode_ms hyper_net "
                << t.hyper_net * 1e3 << " mask_gen " << t.mask_gen * 1e3
                << " entropy_decode " << t.entropy_decode * 1e3 << " reshape "
                << t.reshape * 1e3 << " decoder_net " << t.decoder_net * 1e3
                << " total " << t.total * 1e3 << "\n";
    } else if (*bench) {
      const auto w = scr::LoadWeightsFile(weights);
      const auto corpus = LoadCorpus(corpus_dir, synthetic, size);
      const auto rows = scr::BenchDecode(corpus, w, qualities, reps);
      if (out.empty()) {
        scr::WriteBenchCsv(std::cout, rows);
      } else {
        std::ofstream f(out);
        scr::WriteBenchCsv(f, rows);
      }
    } else if (*analyze) {
      const auto w = scr::LoadWeightsFile(weights);
      const auto corpus = LoadCorpus(corpus_dir, synthetic, size);
      const auto a = scr::AnalyzeCorpus(corpus, w);
      fs::create_directories(out);
      std::ofstream ratio(fs::path(out) / "ratio_bpp.csv");
      scr::WriteRatioCsv(ratio, a);
      std::ofstream reuse(fs::path(out) / "reuse.csv");
      scr::WriteReuseCsv(reuse, a);
      std::ofstream manifest(fs::path(out) / "manifest.csv");
      scr::WriteManifestCsv(manifest, a.manifest);
      std::cout << std::fixed << std::setprecision(4) << "q,mean_bpp,mean_ratio\n";
      for (int q = 1; q <= a.levels; ++q) {
        std::cout << q << "," << a.MeanBpp(q) << "," << a.MeanSelectionRatio(q)
                  << "\n";
      }
      double min_r = 1.0;
      for (double r : a.pearson_per_image) min_r = std::min(min_r, r);
      std::cout << "reuse_1_to_" << a.levels << " " << a.reuse[0][a.levels - 1]
                << "\nmin_pearson_ratio_bpp " << min_r
                << "\nselective_parameter_fraction "
                << 100.0 * a.manifest.SelectiveFraction() << "%\n";
    } else if (*inspect) {
      Inspect(in);
    } else if (*make_ref) {
      scr::ReferenceConfig cfg;
      cfg.seed = seed;
      auto w = scr::MakeReferenceWeights(cfg);
      scr::WriteFileBytes(out, scr::SerializeWeights(w));
      std::cout << "digest " << scr::DigestHex(w.digest) << "\n";
    }
  } catch (const scr::Error& e) {
    std::cerr << "error (" << scr::ErrorCodeName(e.code()) << "): " << e.what()
              << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
