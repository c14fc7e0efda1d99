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

#ifndef METAMORPH_IMAGE_COLOR_H_
#define METAMORPH_IMAGE_COLOR_H_

#include <array>
#include <cstdint>

namespace metamorph {

struct Hsv {
  double h = 0;  // degrees, [0, 360)
  double s = 0;  // [0, 1]
  double v = 0;  // [0, 1]
};

Hsv RgbToHsv(uint8_t r, uint8_t g, uint8_t b);
std::array<uint8_t, 3> HsvToRgb(const Hsv& hsv);

// (max - min) / max, 0 for black.
double Saturation(uint8_t r, uint8_t g, uint8_t b);

// Rec. 601 luma in [0, 255].
double Luma(uint8_t r, uint8_t g, uint8_t b);

}  // namespace metamorph

#endif  // METAMORPH_IMAGE_COLOR_H_
