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

#include "image/color.h"

#include <algorithm>
#include <cmath>

#include "common/text.h"

namespace metamorph {

Hsv RgbToHsv(uint8_t r, uint8_t g, uint8_t b) {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  Hsv out;
  out.v = mx / 255.0;
  if (mx == 0) return out;
  const double delta = mx - mn;
  out.s = delta / mx;
  if (delta == 0) return out;
  double h;
  if (mx == r) {
    h = (g - b) / delta;
  } else if (mx == g) {
    h = 2.0 + (b - r) / delta;
  } else {
    h = 4.0 + (r - g) / delta;
  }
  h *= 60.0;
  if (h < 0) h += 360.0;
  out.h = h >= 360.0 ? h - 360.0 : h;
  return out;
}

std::array<uint8_t, 3> HsvToRgb(const Hsv& hsv) {
  const double h = std::fmod(std::fmod(hsv.h, 360.0) + 360.0, 360.0) / 60.0;
  const double c = hsv.v * hsv.s;
  const double x = c * (1.0 - std::fabs(std::fmod(h, 2.0) - 1.0));
  const double m = hsv.v - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  auto to8 = [m](double v) {
    return static_cast<uint8_t>(std::clamp<int64_t>(RoundHalfAway((v + m) * 255.0), 0, 255));
  };
  return {to8(r), to8(g), to8(b)};
}

double Saturation(uint8_t r, uint8_t g, uint8_t b) {
  const int mx = std::max({r, g, b});
  if (mx == 0) return 0.0;
  const int mn = std::min({r, g, b});
  return static_cast<double>(mx - mn) / mx;
}

double Luma(uint8_t r, uint8_t g, uint8_t b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

}  // namespace metamorph
