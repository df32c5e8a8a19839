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

#ifndef SCR_TESTS_TEST_UTIL_H_
#define SCR_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "scr/random.h"
#include "scr/tensor.h"

namespace scr::testing {

inline std::string DataPath(const std::string& name) {
  return std::string(SCR_TEST_DATA_DIR) + "/" + name;
}

inline Tensor3 RandomTensor(DeterministicRng& rng, Shape3 shape,
                            double scale = 3.0) {
  Tensor3 t(shape);
  for (double& v : t.data()) v = scale * rng.Normal();
  return t;
}

inline BinaryMask RandomMask(DeterministicRng& rng, Shape3 shape, double p) {
  std::vector<std::uint8_t> bits(shape.size());
  for (auto& b : bits) b = rng.Uniform() < p;
  return BinaryMask(shape, std::move(bits));
}

inline Shape3 RandomShape(DeterministicRng& rng, int max_c = 6, int max_hw = 9) {
  return {1 + static_cast<int>(rng.Below(max_c)),
          1 + static_cast<int>(rng.Below(max_hw)),
          1 + static_cast<int>(rng.Below(max_hw))};
}

}  // namespace scr::testing

#endif  // SCR_TESTS_TEST_UTIL_H_
