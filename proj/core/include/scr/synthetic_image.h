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

#ifndef SCR_SYNTHETIC_IMAGE_H_
#define SCR_SYNTHETIC_IMAGE_H_

#include <cstdint>
#include <vector>

#include "scr/tensor.h"

namespace scr {

// Seeded natural-ish test image: a colour gradient, a few flat shapes, a
// low-frequency texture and mild noise. (3, height, width) in [0, 1].
Tensor3 SyntheticImage(std::uint64_t seed, int width, int height);

std::vector<Tensor3> SyntheticCorpus(std::uint64_t seed, int count, int width,
                                     int height);

}  // namespace scr

#endif  // SCR_SYNTHETIC_IMAGE_H_
