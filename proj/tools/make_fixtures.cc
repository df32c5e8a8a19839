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

// Regenerates the committed test fixtures under tests/data. The outputs are
// deterministic; a diff after running this means the normative byte layout
// or the numerics changed.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "scr/bytes.h"
#include "scr/codec.h"
#include "scr/fixtures.h"
#include "scr/image_io.h"
#include "scr/reference_model.h"
#include "scr/synthetic_image.h"
#include "scr/transform.h"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: scr_make_fixtures OUTPUT_DIR\n";
    return 1;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  try {
    auto w = scr::MakeReferenceWeights();
    scr::WriteFileBytes(dir / scr::fixtures::kReferenceWeights,
                        scr::SerializeWeights(w));

    const scr::Tensor3 image = scr::SyntheticImage(
        scr::fixtures::kGoldenImageSeed, scr::fixtures::kGoldenImageSize,
        scr::fixtures::kGoldenImageSize);
    scr::WriteImage(dir / scr::fixtures::kGoldenImage, image);
    // Encode what a reader of the PNG sees, so the fixture chain starts from
    // the committed file.
    const scr::Tensor3 x = scr::ReadImage(dir / scr::fixtures::kGoldenImage);

    const scr::Tensor3 y = scr::ForwardEncoder(w, x);
    scr::WriteFileBytes(dir / scr::fixtures::kGoldenLatent,
                        scr::fixtures::ToFloat32Bytes(y));

    const auto enc = scr::EncodeImage(x, w, scr::fixtures::kGoldenLevel);
    scr::WriteFileBytes(dir / scr::fixtures::kGoldenBitstream,
                        scr::WriteBitstream(enc.bitstream));
    const auto dec = scr::DecodeImage(enc.bitstream, w);
    scr::WriteFileBytes(dir / scr::fixtures::kGoldenReconstruction,
                        scr::fixtures::ToFloat32Bytes(dec.image));

    const auto rc = scr::fixtures::RangeCoderGoldenInput();
    scr::WriteFileBytes(dir / scr::fixtures::kRangeCoderGolden,
                        scr::EncodeSymbols(rc.symbols, rc.cdfs).bytes);
    std::cout << "fixtures written to " << dir << " (weights "
              << scr::DigestHex(w.digest) << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
