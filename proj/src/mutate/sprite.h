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

#ifndef METAMORPH_MUTATE_SPRITE_H_
#define METAMORPH_MUTATE_SPRITE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "image/raster.h"

namespace metamorph {

// RGBA cut-out inserted into training images.
struct Sprite {
  RgbaImage pixels;
  std::string tag;

  int width() const { return pixels.width(); }
  int height() const { return pixels.height(); }
};

// Throws InvalidArgument unless the sprite is non-empty with at least one
// pixel of alpha > 0.
void ValidateSprite(const Sprite& sprite);

// Replaces the hue of every non-transparent pixel with `hue_degrees`, keeps
// value, lifts saturation to at least 0.5. Alpha is untouched.
Sprite Recolor(const Sprite& sprite, double hue_degrees);

// Procedural pools used when no sprite directory is supplied.
std::vector<Sprite> BuiltinBirdSprites(int count);
std::vector<Sprite> BuiltinTreeSprites(int count);

// Every <tag>.png in `dir`, sorted by tag.
std::vector<Sprite> LoadSpritePool(const std::filesystem::path& dir);

}  // namespace metamorph

#endif  // METAMORPH_MUTATE_SPRITE_H_
