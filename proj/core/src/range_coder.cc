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

#include "scr/range_coder.h"

#include <algorithm>
#include <limits>
#include <string>

#include "scr/errors.h"

namespace scr {
namespace {

constexpr std::uint32_t kTop = 1u << 24;

}  // namespace

void RangeEncoder::ShiftLow() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t pending = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(pending + carry));
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    ShiftLow();
  }
}

void RangeEncoder::Encode(std::uint32_t cum, std::uint32_t freq,
                          int precision) {
  const std::uint32_t r = range_ >> precision;
  low_ += static_cast<std::uint64_t>(r) * cum;
  range_ = r * freq;
  Normalize();
}

void RangeEncoder::EncodeRaw16(std::uint32_t value) {
  Encode(value & 0xFFFFu, 1, 16);
}

void RangeEncoder::Put(std::int64_t value, const DiscretizedCdf& cdf) {
  const std::size_t index = cdf.IndexOf(value);
  Encode(cdf.cdf[index], cdf.frequency(index), cdf.precision);
  if (index == cdf.escape_index()) {
    if (value < std::numeric_limits<std::int32_t>::min() ||
        value > std::numeric_limits<std::int32_t>::max()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "value " + std::to_string(value) + " exceeds 32-bit escape");
    }
    const auto raw = static_cast<std::uint32_t>(static_cast<std::int32_t>(value));
    EncodeRaw16(raw >> 16);
    EncodeRaw16(raw & 0xFFFFu);
  }
  ++symbols_;
}

CodedStream RangeEncoder::Finish() {
  for (int i = 0; i < 5; ++i) ShiftLow();
  return CodedStream{std::move(out_)};
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> bytes) : in_(bytes) {
  if (in_.size() < 5) {
    throw Error(ErrorCode::kTruncated, "range coded stream shorter than 5 bytes");
  }
  if (NextByte() != 0) {
    throw Error(ErrorCode::kCorruptStream, "range coded stream bad lead byte");
  }
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

std::uint8_t RangeDecoder::NextByte() {
  if (pos_ >= in_.size()) {
    throw Error(ErrorCode::kTruncated, "range coded stream ended early");
  }
  return in_[pos_++];
}

void RangeDecoder::Normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | NextByte();
  }
}

std::size_t RangeDecoder::DecodeIndex(const DiscretizedCdf& cdf) {
  const std::uint32_t r = range_ >> cdf.precision;
  const std::uint32_t target = code_ / r;
  if (target >= (1u << cdf.precision)) {
    throw Error(ErrorCode::kCorruptStream, "range decoder target out of range");
  }
  // Last i with cdf[i] <= target.
  const auto it = std::upper_bound(cdf.cdf.begin(), cdf.cdf.end(), target);
  const auto index = static_cast<std::size_t>(it - cdf.cdf.begin()) - 1;
  code_ -= r * cdf.cdf[index];
  range_ = r * cdf.frequency(index);
  Normalize();
  return index;
}

std::uint32_t RangeDecoder::DecodeRaw16() {
  const std::uint32_t r = range_ >> 16;
  const std::uint32_t value = code_ / r;
  if (value > 0xFFFFu) {
    throw Error(ErrorCode::kCorruptStream, "range decoder raw value overflow");
  }
  code_ -= r * value;
  range_ = r;
  Normalize();
  return value;
}

std::int64_t RangeDecoder::Get(const DiscretizedCdf& cdf) {
  const std::size_t index = DecodeIndex(cdf);
  ++symbols_;
  if (index != cdf.escape_index()) {
    return cdf.lo + static_cast<std::int64_t>(index);
  }
  const std::uint32_t hi = DecodeRaw16();
  const std::uint32_t lo = DecodeRaw16();
  const std::int64_t value = static_cast<std::int32_t>((hi << 16) | lo);
  if (value >= cdf.lo && value <= cdf.hi) {
    throw Error(ErrorCode::kCorruptStream, "escaped value inside support");
  }
  return value;
}

void RangeDecoder::CheckFinished() const {
  if (pos_ != in_.size()) {
    throw Error(ErrorCode::kCorruptStream,
                std::to_string(in_.size() - pos_) +
                    " unconsumed bytes after range decoding");
  }
}

CodedStream EncodeSymbols(std::span<const std::int64_t> symbols,
                          std::span<const DiscretizedCdf> cdfs) {
  if (symbols.size() != cdfs.size()) {
    throw Error(ErrorCode::kShape, "encode: symbol/cdf count mismatch");
  }
  RangeEncoder enc;
  for (std::size_t i = 0; i < symbols.size(); ++i) enc.Put(symbols[i], cdfs[i]);
  return enc.Finish();
}

std::vector<std::int64_t> DecodeSymbols(const CodedStream& stream,
                                        std::span<const DiscretizedCdf> cdfs) {
  RangeDecoder dec(stream.bytes);
  std::vector<std::int64_t> out;
  out.reserve(cdfs.size());
  for (const auto& cdf : cdfs) out.push_back(dec.Get(cdf));
  dec.CheckFinished();
  return out;
}

}  // namespace scr
