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

#ifndef SCR_TENSOR_H_
#define SCR_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scr {

struct Shape3 {
  int channels = 0;
  int height = 0;
  int width = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * height * width;
  }
  std::size_t plane() const { return static_cast<std::size_t>(height) * width; }
  bool operator==(const Shape3&) const = default;
};

// Dense (C, H, W) tensor of doubles in row-major order. Holds latents,
// hyper-latents, distribution parameters and images alike.
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(Shape3 shape, double fill = 0.0);
  Tensor3(Shape3 shape, std::vector<double> data);

  const Shape3& shape() const { return shape_; }
  int channels() const { return shape_.channels; }
  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  std::size_t size() const { return data_.size(); }

  double& at(int c, int y, int x) {
    return data_[(static_cast<std::size_t>(c) * shape_.height + y) *
                     shape_.width + x];
  }
  double at(int c, int y, int x) const {
    return data_[(static_cast<std::size_t>(c) * shape_.height + y) *
                     shape_.width + x];
  }

  std::span<double> channel(int c) {
    return {data_.data() + c * shape_.plane(), shape_.plane()};
  }
  std::span<const double> channel(int c) const {
    return {data_.data() + c * shape_.plane(), shape_.plane()};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool AllFinite() const;

  bool operator==(const Tensor3&) const = default;

 private:
  Shape3 shape_;
  std::vector<double> data_;
};

// 3D binary mask with the same layout as Tensor3.
class BinaryMask {
 public:
  BinaryMask() = default;
  explicit BinaryMask(Shape3 shape, bool fill = false);
  BinaryMask(Shape3 shape, std::vector<std::uint8_t> bits);

  const Shape3& shape() const { return shape_; }
  std::size_t size() const { return bits_.size(); }
  bool get(std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  bool at(int c, int y, int x) const {
    return bits_[(static_cast<std::size_t>(c) * shape_.height + y) *
                     shape_.width + x] != 0;
  }
  std::span<const std::uint8_t> bits() const { return bits_; }

  std::size_t Popcount() const;

  bool operator==(const BinaryMask&) const = default;

 private:
  Shape3 shape_;
  std::vector<std::uint8_t> bits_;
};

// Values gathered from the mask==1 positions, in flattened (C, H, W) order.
struct SelectedElements {
  std::vector<double> values;

  std::size_t count() const { return values.size(); }
  bool operator==(const SelectedElements&) const = default;
};

// One value per channel. Positivity is checked by the consumers that need it
// (rate vector tables, importance adjustment).
class ChannelVector {
 public:
  ChannelVector() = default;
  explicit ChannelVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  bool AllPositiveFinite() const;

  bool operator==(const ChannelVector&) const = default;

 private:
  std::vector<double> values_;
};

// Selection operator: gathers rep at mask==1 in row-major order.
SelectedElements Select(const Tensor3& rep, const BinaryMask& mask);

// Inverse of Select: scatters values back, exact 0.0 where mask==0.
Tensor3 ReshapeInPlace(const SelectedElements& selected,
                       const BinaryMask& mask);

enum class ScaleMode { kMultiply, kDivide };

Tensor3 ChannelwiseScale(const Tensor3& t, const ChannelVector& v,
                         ScaleMode mode);

}  // namespace scr

#endif  // SCR_TENSOR_H_
