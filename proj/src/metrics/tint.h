/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef METAMORPH_METRICS_TINT_H_
#define METAMORPH_METRICS_TINT_H_

#include "image/raster.h"

namespace metamorph {

// 1 - mean HSV saturation over all pixels, in [0, 1]. Higher means more
// washed-out. Throws EmptyImage.
//
// Pixels are tallied by their (max, min) channel pair and the histogram is
// summed in a fixed order, so the score is exactly invariant under any
// permutation of pixels (rotations, flips).
double GreyTintScore(const RgbImage& img);

}  // namespace metamorph

#endif  // METAMORPH_METRICS_TINT_H_
