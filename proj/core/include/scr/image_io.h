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

#ifndef SCR_IMAGE_IO_H_
#define SCR_IMAGE_IO_H_

#include <filesystem>
#include <vector>

#include "scr/tensor.h"

namespace scr {

// Reads PNG (any bit depth / colour type, converted to 8-bit RGB) or binary
// PPM/PGM (P6/P5, maxval <= 255). Returns (3, H, W) in [0, 1].
Tensor3 ReadImage(const std::filesystem::path& path);

// Writes 8-bit RGB; format chosen by extension (.png, otherwise .ppm).
void WriteImage(const std::filesystem::path& path, const Tensor3& image);

// All readable images in a directory, sorted by file name.
std::vector<std::filesystem::path> ListImages(const std::filesystem::path& dir);

}  // namespace scr

#endif  // SCR_IMAGE_IO_H_
