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

#include "mutate/placement.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "common/error.h"
#include "common/text.h"

namespace metamorph {

void CompositeOver(RgbImage& dst, const RgbaImage& src, int x0, int y0) {
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      const uint8_t* s = src.at(x, y);
      const unsigned a = s[3];
      if (a == 0) continue;
      uint8_t* d = dst.at(x0 + x, y0 + y);
      for (int c = 0; c < 3; ++c) {
        d[c] = static_cast<uint8_t>((a * s[c] + (255 - a) * d[c] + 127) / 255);
      }
    }
  }
}

PlacementRecord InsertObject(RgbImage& img, const BoundingBox& focal, const Sprite& sprite,
                             double budget, Rng& rng) {
  if (img.empty()) Fail(ErrorCode::kEmptyImage, "insert_object on empty raster");
  if (!(budget >= 0.0)) Fail(ErrorCode::kInvalidArgument, "occlusion budget must be >= 0");
  ValidateSprite(sprite);

  const int W = img.width(), H = img.height();
  const double native_area = static_cast<double>(sprite.width()) * sprite.height();
  double scale = std::sqrt(kSpriteAreaFraction * focal.area() / native_area);
  scale = std::min({scale, static_cast<double>(W) / sprite.width(),
                    static_cast<double>(H) / sprite.height()});
  int w = static_cast<int>(std::clamp<int64_t>(RoundHalfAway(sprite.width() * scale), 1, W));
  int h = static_cast<int>(std::clamp<int64_t>(RoundHalfAway(sprite.height() * scale), 1, H));
  // Rounding may push a tiny focal box over the limit; shave the longer side.
  while (static_cast<double>(w) * h >= focal.area()) {
    if (w >= h && w > 1) {
      --w;
    } else if (h > 1) {
      --h;
    } else {
      Fail(ErrorCode::kNoValidPlacement, "focal box too small for any sprite");
    }
  }

  BoundingBox best;
  double best_iou = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kPlacementCandidates; ++i) {
    const int x = static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(W - w + 1)));
    const int y = static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(H - h + 1)));
    const BoundingBox cand{static_cast<double>(x), static_cast<double>(y),
                           static_cast<double>(w), static_cast<double>(h)};
    const double iou = IoU(cand, focal);
    if (iou < best_iou) {
      best = cand;
      best_iou = iou;
    }
    if (iou <= budget) break;
  }
  if (!(best_iou <= budget)) {
    Fail(ErrorCode::kNoValidPlacement, "no candidate within occlusion budget " + FormatFixed(budget, 3) +
                                           " (best IoU " + FormatFixed(best_iou, 3) + ")");
  }

  const RgbaImage scaled = ResizeRgba(sprite.pixels, w, h);
  CompositeOver(img, scaled, static_cast<int>(best.x), static_cast<int>(best.y));

  PlacementRecord rec;
  rec.sprite_tag = sprite.tag;
  rec.inserted_bbox = best;
  rec.scale_factor = scale;
  rec.achieved_iou = best_iou;
  return rec;
}

}  // namespace metamorph
