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

#ifndef METAMORPH_MUTATE_PLACEMENT_H_
#define METAMORPH_MUTATE_PLACEMENT_H_

#include <string>

#include "common/rng.h"
#include "dataset/dataset.h"
#include "image/raster.h"
#include "mutate/sprite.h"

namespace metamorph {

inline constexpr double kSpriteAreaFraction = 0.25;
inline constexpr int kPlacementCandidates = 256;

struct PlacementRecord {
  std::string image_id;
  std::string sprite_tag;
  BoundingBox inserted_bbox;  // integral pixel rectangle
  double scale_factor = 1.0;
  double achieved_iou = 0.0;

  friend bool operator==(const PlacementRecord&, const PlacementRecord&) = default;
};

// Scales `sprite` to a quarter of the focal area (clamped to the frame),
// draws up to kPlacementCandidates top-left positions from `rng` and
// alpha-composites the sprite at the first one whose IoU with `focal` is
// within `budget`. Pixels outside the inserted rectangle are not touched.
// Throws NoValidPlacement when no candidate qualifies; `img` is then
// unchanged. The returned record has an empty image_id.
PlacementRecord InsertObject(RgbImage& img, const BoundingBox& focal, const Sprite& sprite,
                             double budget, Rng& rng);

// Straight-alpha "over" of src onto dst at (x, y); src must fit.
void CompositeOver(RgbImage& dst, const RgbaImage& src, int x, int y);

}  // namespace metamorph

#endif  // METAMORPH_MUTATE_PLACEMENT_H_
