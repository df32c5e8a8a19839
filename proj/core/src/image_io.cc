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

#include "scr/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "scr/bytes.h"
#include "scr/errors.h"

namespace scr {
namespace {

Tensor3 FromInterleaved(const std::uint8_t* px, int width, int height,
                        int channels) {
  Tensor3 out({3, height, width});
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint8_t* p =
          px + (static_cast<std::size_t>(y) * width + x) * channels;
      for (int c = 0; c < 3; ++c) {
        out.at(c, y, x) = p[channels == 1 ? 0 : c] / 255.0;
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> ToInterleaved(const Tensor3& image) {
  if (image.channels() != 3 && image.channels() != 1) {
    throw Error(ErrorCode::kShape, "images must have 1 or 3 channels");
  }
  std::vector<std::uint8_t> px(static_cast<std::size_t>(image.width()) *
                               image.height() * 3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        const int src = image.channels() == 1 ? 0 : c;
        const double v = std::clamp(image.at(src, y, x), 0.0, 1.0);
        px[(static_cast<std::size_t>(y) * image.width() + x) * 3 + c] =
            static_cast<std::uint8_t>(std::lround(v * 255.0));
      }
    }
  }
  return px;
}

Tensor3 ReadPng(const std::filesystem::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof img);
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str())) {
    throw Error(ErrorCode::kIo, "png: " + path.string() + ": " + img.message);
  }
  img.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, px.data(), 0, nullptr)) {
    png_image_free(&img);
    throw Error(ErrorCode::kIo, "png: " + path.string() + ": " + img.message);
  }
  return FromInterleaved(px.data(), static_cast<int>(img.width),
                         static_cast<int>(img.height), 3);
}

Tensor3 ReadPnm(const std::vector<std::uint8_t>& bytes,
                const std::filesystem::path& path) {
  std::size_t pos = 2;
  auto next_int = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    long v = 0;
    bool any = false;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      any = true;
      if (v > 1 << 20) break;
    }
    if (!any) throw Error(ErrorCode::kIo, "pnm: bad header in " + path.string());
    return v;
  };
  const int channels = bytes[1] == '6' ? 3 : 1;
  const long width = next_int();
  const long height = next_int();
  const long maxval = next_int();
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw Error(ErrorCode::kUnsupported, "pnm: unsupported header in " +
                                             path.string());
  }
  ++pos;  // single whitespace before raster
  const std::size_t need = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() < pos + need) {
    throw Error(ErrorCode::kTruncated, "pnm: truncated raster in " + path.string());
  }
  Tensor3 out = FromInterleaved(bytes.data() + pos, static_cast<int>(width),
                                static_cast<int>(height), channels);
  if (maxval != 255) {
    for (double& v : out.data()) v = std::min(1.0, v * 255.0 / maxval);
  }
  return out;
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  return s;
}

}  // namespace

Tensor3 ReadImage(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return ReadPng(path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '6' || bytes[1] == '5')) {
    return ReadPnm(bytes, path);
  }
  throw Error(ErrorCode::kUnsupported, "unrecognised image format: " +
                                           path.string());
}

void WriteImage(const std::filesystem::path& path, const Tensor3& image) {
  const auto px = ToInterleaved(image);
  if (Lower(path.extension().string()) == ".png") {
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width());
    img.height = static_cast<png_uint_32>(image.height());
    img.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&img, path.c_str(), 0, px.data(), 0,
                                 nullptr)) {
      throw Error(ErrorCode::kIo, "png: cannot write " + path.string() + ": " +
                                      img.message);
    }
    return;
  }
  std::ostringstream header;
  header << "P6\n" << image.width() << " " << image.height() << "\n255\n";
  const std::string h = header.str();
  std::vector<std::uint8_t> out(h.begin(), h.end());
  out.insert(out.end(), px.begin(), px.end());
  WriteFileBytes(path, out);
}

std::vector<std::filesystem::path> ListImages(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = Lower(entry.path().extension().string());
    if (ext == ".png" || ext == ".ppm" || ext == ".pgm" || ext == ".pnm") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace scr
