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

#include "metrics/tint.h"

#include <algorithm>
#include <vector>

#include "common/error.h"
#include "common/summation.h"

namespace metamorph {

double GreyTintScore(const RgbImage& img) {
  if (img.empty()) Fail(ErrorCode::kEmptyImage, "grey tint of empty raster");
  std::vector<uint64_t> counts(256 * 256, 0);
  const auto bytes = img.bytes();
  for (size_t i = 0; i < bytes.size(); i += 3) {
    const uint8_t mx = std::max({bytes[i], bytes[i + 1], bytes[i + 2]});
    const uint8_t mn = std::min({bytes[i], bytes[i + 1], bytes[i + 2]});
    ++counts[mx * 256u + mn];
  }
  CompensatedSum saturation;
  for (unsigned mx = 1; mx < 256; ++mx) {
    for (unsigned mn = 0; mn < mx; ++mn) {
      const uint64_t c = counts[mx * 256u + mn];
      if (c) saturation.Add(static_cast<double>(c) * (static_cast<double>(mx - mn) / mx));
    }
  }
  const double mean = saturation.value() / static_cast<double>(img.pixel_count());
  return std::clamp(1.0 - mean, 0.0, 1.0);
}

}  // namespace metamorph
