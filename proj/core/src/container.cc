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

#include "scr/container.h"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <string>

#include "scr/bytes.h"
#include "scr/errors.h"

namespace scr {
namespace {

constexpr char kMagic[4] = {'S', 'C', 'R', '1'};
constexpr std::uint8_t kZeroMeanFlag = 1u << 2;
constexpr std::uint8_t kReservedFlags = 0xF8;

std::uint32_t Crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::uint16_t CheckedU16(int v, const char* what) {
  if (v <= 0 || v > 0xFFFF) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " does not fit the header: " +
                    std::to_string(v));
  }
  return static_cast<std::uint16_t>(v);
}

void WriteShape(ByteWriter& w, const Shape3& s, const char* what) {
  w.U16(CheckedU16(s.channels, what));
  w.U16(CheckedU16(s.height, what));
  w.U16(CheckedU16(s.width, what));
}

Shape3 ReadShape(ByteReader& r) {
  Shape3 s;
  s.channels = r.U16();
  s.height = r.U16();
  s.width = r.U16();
  if (s.channels == 0 || s.height == 0 || s.width == 0) {
    throw Error(ErrorCode::kCorruptStream, "zero dimension in header");
  }
  return s;
}

}  // namespace

std::uint16_t QuantizeQuality(double q) {
  if (!(q >= 1.0 && q < 256.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "quality " + std::to_string(q) + " cannot be represented");
  }
  return static_cast<std::uint16_t>(std::floor(q * 256.0 + 1e-9));
}

SizeBreakdown Sizes(const ScrBitstream& bs) {
  SizeBreakdown s;
  s.header_bits = 8 * (bs.header.ByteSize() + 4 + 4 + 4);
  s.z_bits = bs.z_stream.bit_length();
  s.y_bits = bs.y_stream.bit_length();
  return s;
}

std::vector<std::uint8_t> WriteBitstream(const ScrBitstream& bs) {
  const ScrHeader& h = bs.header;
  ByteWriter w;
  for (char c : kMagic) w.U8(static_cast<std::uint8_t>(c));
  w.U8(h.version);
  w.U8(static_cast<std::uint8_t>(static_cast<std::uint8_t>(h.mask_mode.kind) |
                                 (h.zero_mean ? kZeroMeanFlag : 0)));
  if (h.quality_fixed < 256) {
    throw Error(ErrorCode::kInvalidArgument, "quality below 1.0");
  }
  w.U16(h.quality_fixed);
  w.U16(CheckedU16(h.image_width, "image width"));
  w.U16(CheckedU16(h.image_height, "image height"));
  WriteShape(w, h.latent, "latent shape");
  WriteShape(w, h.hyper, "hyper shape");
  w.Bytes(h.model_id);
  if (h.mask_mode.kind == MaskMode::Kind::kStochastic) w.U64(h.mask_mode.seed);

  for (const CodedStream* s : {&bs.z_stream, &bs.y_stream}) {
    if (s->bytes.size() > 0xFFFFFFFFu) {
      throw Error(ErrorCode::kInvalidArgument, "stream too long");
    }
    w.U32(static_cast<std::uint32_t>(s->bytes.size()));
    w.Bytes(s->bytes);
  }
  w.U32(Crc32(w.data()));
  return w.Take();
}

ScrBitstream ReadBitstream(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 5) throw Error(ErrorCode::kTruncated, "bitstream too short");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "not an SCR bitstream (magic)");
  }
  if (bytes[4] != kBitstreamVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported bitstream version " + std::to_string(bytes[4]));
  }
  if (bytes.size() < kBaseHeaderBytes + 12) {
    throw Error(ErrorCode::kTruncated, "bitstream shorter than its header");
  }
  const auto body = bytes.first(bytes.size() - 4);
  std::uint32_t stored_crc;
  std::memcpy(&stored_crc, bytes.data() + body.size(), 4);
  if (Crc32(body) != stored_crc) {
    throw Error(ErrorCode::kCorruptStream, "bitstream checksum mismatch");
  }

  ByteReader r(body);
  r.Bytes(4);
  ScrBitstream bs;
  ScrHeader& h = bs.header;
  h.version = r.U8();
  const std::uint8_t flags = r.U8();
  if (flags & kReservedFlags) {
    throw Error(ErrorCode::kCorruptStream, "reserved header flags set");
  }
  h.mask_mode.kind = static_cast<MaskMode::Kind>(flags & 0x3);
  h.zero_mean = (flags & kZeroMeanFlag) != 0;
  h.quality_fixed = r.U16();
  if (h.quality_fixed < 256) {
    throw Error(ErrorCode::kCorruptStream, "quality below 1.0 in header");
  }
  h.image_width = r.U16();
  h.image_height = r.U16();
  if (h.image_width == 0 || h.image_height == 0) {
    throw Error(ErrorCode::kCorruptStream, "zero image size in header");
  }
  h.latent = ReadShape(r);
  h.hyper = ReadShape(r);
  const auto id = r.Bytes(16);
  std::copy(id.begin(), id.end(), h.model_id.begin());
  if (h.mask_mode.kind == MaskMode::Kind::kStochastic) {
    h.mask_mode.seed = r.U64();
  }

  for (CodedStream* s : {&bs.z_stream, &bs.y_stream}) {
    const std::uint32_t n = r.U32();
    const auto payload = r.Bytes(n);
    s->bytes.assign(payload.begin(), payload.end());
  }
  if (r.remaining() != 0) {
    throw Error(ErrorCode::kCorruptStream, "trailing bytes in bitstream");
  }
  return bs;
}

}  // namespace scr
