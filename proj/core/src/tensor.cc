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

#include "scr/tensor.h"

#include <cmath>
#include <sstream>
#include <string>

#include "scr/errors.h"

namespace scr {
namespace {

std::string ShapeString(const Shape3& s) {
  std::ostringstream os;
  os << "(" << s.channels << ", " << s.height << ", " << s.width << ")";
  return os.str();
}

void CheckShape(const Shape3& s) {
  if (s.channels <= 0 || s.height <= 0 || s.width <= 0) {
    throw Error(ErrorCode::kShape, "non-positive tensor shape " + ShapeString(s));
  }
}

}  // namespace

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kBadVersion: return "bad_version";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kCorruptStream: return "corrupt_stream";
    case ErrorCode::kDigestMismatch: return "digest_mismatch";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

Tensor3::Tensor3(Shape3 shape, double fill) : shape_(shape) {
  CheckShape(shape_);
  data_.assign(shape_.size(), fill);
}

Tensor3::Tensor3(Shape3 shape, std::vector<double> data)
    : shape_(shape), data_(std::move(data)) {
  CheckShape(shape_);
  if (data_.size() != shape_.size()) {
    throw Error(ErrorCode::kShape, "tensor data length " +
                                       std::to_string(data_.size()) +
                                       " does not match shape " +
                                       ShapeString(shape_));
  }
}

bool Tensor3::AllFinite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

BinaryMask::BinaryMask(Shape3 shape, bool fill) : shape_(shape) {
  CheckShape(shape_);
  bits_.assign(shape_.size(), fill ? 1 : 0);
}

BinaryMask::BinaryMask(Shape3 shape, std::vector<std::uint8_t> bits)
    : shape_(shape), bits_(std::move(bits)) {
  CheckShape(shape_);
  if (bits_.size() != shape_.size()) {
    throw Error(ErrorCode::kShape, "mask length does not match shape " +
                                       ShapeString(shape_));
  }
  for (auto& b : bits_) {
    if (b > 1) throw Error(ErrorCode::kInvalidArgument, "mask bit not in {0,1}");
  }
}

std::size_t BinaryMask::Popcount() const {
  std::size_t n = 0;
  for (auto b : bits_) n += b;
  return n;
}

bool ChannelVector::AllPositiveFinite() const {
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) return false;
  }
  return true;
}

SelectedElements Select(const Tensor3& rep, const BinaryMask& mask) {
  if (rep.shape() != mask.shape()) {
    throw Error(ErrorCode::kShape, "select: tensor " + ShapeString(rep.shape()) +
                                       " vs mask " + ShapeString(mask.shape()));
  }
  SelectedElements out;
  out.values.reserve(mask.Popcount());
  const auto data = rep.data();
  const auto bits = mask.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out.values.push_back(data[i]);
  }
  return out;
}

Tensor3 ReshapeInPlace(const SelectedElements& selected,
                       const BinaryMask& mask) {
  if (selected.count() != mask.Popcount()) {
    throw Error(ErrorCode::kShape,
                "reshape: " + std::to_string(selected.count()) +
                    " selected values for a mask with popcount " +
                    std::to_string(mask.Popcount()));
  }
  Tensor3 out(mask.shape(), 0.0);
  auto data = out.data();
  const auto bits = mask.bits();
  std::size_t next = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) data[i] = selected.values[next++];
  }
  return out;
}

Tensor3 ChannelwiseScale(const Tensor3& t, const ChannelVector& v,
                         ScaleMode mode) {
  if (v.size() != static_cast<std::size_t>(t.channels())) {
    throw Error(ErrorCode::kShape, "channel vector length " +
                                       std::to_string(v.size()) + " vs " +
                                       std::to_string(t.channels()) +
                                       " channels");
  }
  if (mode == ScaleMode::kDivide) {
    for (double s : v.values()) {
      if (s == 0.0) throw Error(ErrorCode::kInvalidArgument, "zero divisor");
    }
  }
  Tensor3 out = t;
  for (int c = 0; c < t.channels(); ++c) {
    const double s = v[c];
    for (double& x : out.channel(c)) {
      x = mode == ScaleMode::kMultiply ? x * s : x / s;
    }
  }
  return out;
}

}  // namespace scr
