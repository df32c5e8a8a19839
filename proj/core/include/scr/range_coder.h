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

#ifndef SCR_RANGE_CODER_H_
#define SCR_RANGE_CODER_H_

// Byte-oriented range coder with a 32-bit range and carry propagation
// through a cached byte (the LZMA scheme). Only integer arithmetic runs in
// the coding loop, so a given symbol/CDF sequence always produces the same
// bytes.
//
// Stream layout: the first byte is always 0x00; encoding N renormalisation
// shifts yields exactly N + 5 bytes, and the decoder consumes exactly that
// many. Escaped values follow the escape symbol as two raw 16-bit halves
// (high half first) of the 32-bit two's complement value.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scr/entropy_model.h"

namespace scr {

struct CodedStream {
  std::vector<std::uint8_t> bytes;

  std::size_t bit_length() const { return bytes.size() * 8; }
  bool operator==(const CodedStream&) const = default;
};

class RangeEncoder {
 public:
  RangeEncoder() = default;

  // Encodes the interval [cum, cum + freq) out of 2^precision.
  void Encode(std::uint32_t cum, std::uint32_t freq, int precision);
  void EncodeRaw16(std::uint32_t value);

  // Codes value against cdf, escaping when it falls outside the support.
  // Throws kInvalidArgument for values that do not fit in 32 bits.
  void Put(std::int64_t value, const DiscretizedCdf& cdf);

  std::size_t symbols() const { return symbols_; }

  // Flushes and returns the stream. The encoder must not be used afterwards.
  CodedStream Finish();

 private:
  void ShiftLow();
  void Normalize();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::size_t symbols_ = 0;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  // Throws kTruncated if fewer than 5 bytes, kCorruptStream on a bad lead
  // byte.
  explicit RangeDecoder(std::span<const std::uint8_t> bytes);

  // Returns the symbol index decoded against cdf.
  std::size_t DecodeIndex(const DiscretizedCdf& cdf);
  std::uint32_t DecodeRaw16();

  // Inverse of RangeEncoder::Put.
  std::int64_t Get(const DiscretizedCdf& cdf);

  std::size_t symbols() const { return symbols_; }

  // Throws kCorruptStream unless every input byte was consumed.
  void CheckFinished() const;

 private:
  std::uint8_t NextByte();
  void Normalize();

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
  std::size_t symbols_ = 0;
};

// Whole-sequence helpers. cdfs[i] models symbols[i].
CodedStream EncodeSymbols(std::span<const std::int64_t> symbols,
                          std::span<const DiscretizedCdf> cdfs);
std::vector<std::int64_t> DecodeSymbols(const CodedStream& stream,
                                        std::span<const DiscretizedCdf> cdfs);

}  // namespace scr

#endif  // SCR_RANGE_CODER_H_
