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

#ifndef SCR_CONTAINER_H_
#define SCR_CONTAINER_H_

// .scr bitstream layout (little-endian):
//
//   offset  size  field
//        0     4  magic "SCR1"
//        4     1  version (1)
//        5     1  flags: bits 0-1 mask mode (0 det, 1 stoch, 2 2d, 3 full),
//                 bit 2 zero-mean model, bits 3-7 zero
//        6     2  quality, unsigned 8.8 fixed point
//        8     2  image width      10  2  image height
//       12     6  latent C, H, W (u16 each)
//       18     6  hyper-latent C, H, W (u16 each)
//       24    16  model id (weight container digest)
//       40     8  mask seed, present only for the stochastic mask mode
//        -     4  z stream length, then z stream bytes
//        -     4  y stream length, then y stream bytes
//        -     4  CRC-32 of every preceding byte
//
// The mask is not stored; the decoder regenerates it from the hyper-latent
// and the quality level.

#include <cstdint>
#include <span>
#include <vector>

#include "scr/importance_mask.h"
#include "scr/range_coder.h"
#include "scr/tensor.h"
#include "scr/weights.h"

namespace scr {

inline constexpr std::uint8_t kBitstreamVersion = 1;
inline constexpr std::size_t kBaseHeaderBytes = 40;

struct ScrHeader {
  std::uint8_t version = kBitstreamVersion;
  MaskMode mask_mode;
  bool zero_mean = false;
  std::uint16_t quality_fixed = 256;  // q * 256
  std::uint16_t image_width = 0;
  std::uint16_t image_height = 0;
  Shape3 latent;
  Shape3 hyper;
  Digest model_id{};

  double quality() const { return quality_fixed / 256.0; }
  std::size_t ByteSize() const {
    return kBaseHeaderBytes +
           (mask_mode.kind == MaskMode::Kind::kStochastic ? 8 : 0);
  }
  bool operator==(const ScrHeader&) const = default;
};

// Truncates q to the 1/256 grid (with a 1e-9 allowance so values such as
// 1.0 + 0.1 * 30 land on the integer). Throws outside [1, 255.99].
std::uint16_t QuantizeQuality(double q);

struct ScrBitstream {
  ScrHeader header;
  CodedStream z_stream;
  CodedStream y_stream;

  bool operator==(const ScrBitstream&) const = default;
};

struct SizeBreakdown {
  std::size_t header_bits = 0;  // fixed header, length prefixes and CRC
  std::size_t z_bits = 0;
  std::size_t y_bits = 0;
  std::size_t total_bits() const { return header_bits + z_bits + y_bits; }
};

SizeBreakdown Sizes(const ScrBitstream& bs);

std::vector<std::uint8_t> WriteBitstream(const ScrBitstream& bs);

// Throws kBadMagic, kBadVersion, kTruncated, kCorruptStream (checksum,
// reserved bits, bad fields, inconsistent lengths).
ScrBitstream ReadBitstream(std::span<const std::uint8_t> bytes);

}  // namespace scr

#endif  // SCR_CONTAINER_H_
