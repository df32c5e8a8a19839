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

#ifndef SCR_TRANSFORM_H_
#define SCR_TRANSFORM_H_

#include "scr/tensor.h"
#include "scr/weights.h"

namespace scr {

// x is (image_channels, H, W) with H, W multiples of w.PadMultiple().
Tensor3 ForwardEncoder(const WeightContainer& w, const Tensor3& x);
Tensor3 ForwardHyperEncoder(const WeightContainer& w, const Tensor3& y);

struct HyperDecoderOutput {
  Tensor3 mu;        // (C_y, H', W')
  Tensor3 sigma;     // softplus(raw), floored at kSigmaFloor
  Tensor3 features;  // input of the parameter layer, (C_hd, H', W')
};

HyperDecoderOutput ForwardHyperDecoder(const WeightContainer& w,
                                       const Tensor3& z_hat);

// Output is clipped to [0, 1].
Tensor3 ForwardDecoder(const WeightContainer& w, const Tensor3& y_recon);

// log(1 + e^x) without overflow.
double Softplus(double x);

// Replicate-pads (C, H, W) on the bottom/right to multiples of `multiple`.
Tensor3 PadReplicate(const Tensor3& x, int multiple);
Tensor3 Crop(const Tensor3& x, int height, int width);

}  // namespace scr

#endif  // SCR_TRANSFORM_H_
