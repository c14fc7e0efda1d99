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

#include "image/raster.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "common/error.h"
#include "common/text.h"

namespace metamorph {

RgbImage RotateQuarter(const RgbImage& img) {
  RgbImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const uint8_t* s = img.at(x, y);
      uint8_t* d = out.at(img.height() - 1 - y, x);
      std::copy(s, s + 3, d);
    }
  }
  return out;
}

RgbImage FlipHorizontal(const RgbImage& img) {
  RgbImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const uint8_t* s = img.at(x, y);
      std::copy(s, s + 3, out.at(img.width() - 1 - x, y));
    }
  }
  return out;
}

RgbImage FlipVertical(const RgbImage& img) {
  RgbImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const uint8_t* s = img.at(x, y);
      std::copy(s, s + 3, out.at(x, img.height() - 1 - y));
    }
  }
  return out;
}

RgbaImage ResizeRgba(const RgbaImage& src, int width, int height) {
  if (src.empty() || width <= 0 || height <= 0) {
    Fail(ErrorCode::kInvalidArgument, "resize of empty raster");
  }
  RgbaImage out(width, height);
  const double sx = static_cast<double>(src.width()) / width;
  const double sy = static_cast<double>(src.height()) / height;
  for (int oy = 0; oy < height; ++oy) {
    const double y0 = oy * sy, y1 = (oy + 1) * sy;
    for (int ox = 0; ox < width; ++ox) {
      const double x0 = ox * sx, x1 = (ox + 1) * sx;
      std::array<double, 4> acc{};  // premultiplied r, g, b and alpha
      double total = 0;
      for (int y = static_cast<int>(std::floor(y0)); y < std::min<double>(src.height(), std::ceil(y1)); ++y) {
        const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        if (wy <= 0) continue;
        for (int x = static_cast<int>(std::floor(x0)); x < std::min<double>(src.width(), std::ceil(x1)); ++x) {
          const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
          if (wx <= 0) continue;
          const double w = wx * wy;
          const uint8_t* p = src.at(x, y);
          const double a = p[3] / 255.0;
          acc[0] += w * p[0] * a;
          acc[1] += w * p[1] * a;
          acc[2] += w * p[2] * a;
          acc[3] += w * p[3];
          total += w;
        }
      }
      uint8_t* d = out.at(ox, oy);
      const double alpha = acc[3] / total;
      d[3] = static_cast<uint8_t>(std::clamp<int64_t>(RoundHalfAway(alpha), 0, 255));
      if (d[3] == 0) {
        d[0] = d[1] = d[2] = 0;
        continue;
      }
      const double norm = total * (alpha / 255.0);
      for (int c = 0; c < 3; ++c) {
        d[c] = static_cast<uint8_t>(std::clamp<int64_t>(RoundHalfAway(acc[c] / norm), 0, 255));
      }
    }
  }
  return out;
}

}  // namespace metamorph
