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

#include "scr/synthetic_image.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scr/random.h"

namespace scr {

Tensor3 SyntheticImage(std::uint64_t seed, int width, int height) {
  DeterministicRng rng(seed);
  Tensor3 img({3, height, width});

  double base[2][3];
  for (auto& corner : base) {
    for (double& c : corner) c = rng.Uniform(0.1, 0.9);
  }
  const double angle = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  const double norm = std::abs(dx) * width + std::abs(dy) * height;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      double t = (dx * x + dy * y) / norm;
      t = t - std::floor(t);
      for (int c = 0; c < 3; ++c) {
        img.at(c, y, x) = (1.0 - t) * base[0][c] + t * base[1][c];
      }
    }
  }

  const int shapes = 2 + static_cast<int>(rng.Below(5));
  for (int s = 0; s < shapes; ++s) {
    double color[3];
    for (double& c : color) c = rng.Uniform();
    const double cx = rng.Uniform(0.0, width);
    const double cy = rng.Uniform(0.0, height);
    const double r = rng.Uniform(0.08, 0.35) * std::min(width, height);
    const bool circle = rng.Uniform() < 0.5;
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double ex = x - cx;
        const double ey = y - cy;
        const bool inside = circle ? ex * ex + ey * ey <= r * r
                                   : std::abs(ex) <= r && std::abs(ey) <= 0.6 * r;
        if (!inside) continue;
        for (int c = 0; c < 3; ++c) img.at(c, y, x) = color[c];
      }
    }
  }

  const double fx = rng.Uniform(0.05, 0.4);
  const double fy = rng.Uniform(0.05, 0.4);
  const double amp = rng.Uniform(0.02, 0.08);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double tex = amp * std::sin(fx * x) * std::cos(fy * y);
      for (int c = 0; c < 3; ++c) {
        const double noise = 0.02 * (rng.Uniform() - 0.5);
        img.at(c, y, x) = std::clamp(img.at(c, y, x) + tex + noise, 0.0, 1.0);
      }
    }
  }
  return img;
}

std::vector<Tensor3> SyntheticCorpus(std::uint64_t seed, int count, int width,
                                     int height) {
  std::vector<Tensor3> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(SyntheticImage(seed * 1000003u + i, width, height));
  }
  return out;
}

}  // namespace scr
