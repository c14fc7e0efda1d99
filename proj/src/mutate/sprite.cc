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

#include "mutate/sprite.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "common/error.h"
#include "image/codec.h"
#include "image/color.h"

namespace metamorph {

namespace fs = std::filesystem;

void ValidateSprite(const Sprite& sprite) {
  if (sprite.pixels.empty()) Fail(ErrorCode::kInvalidArgument, "sprite '" + sprite.tag + "' is empty");
  const auto bytes = sprite.pixels.bytes();
  for (size_t i = 3; i < bytes.size(); i += 4) {
    if (bytes[i] > 0) return;
  }
  Fail(ErrorCode::kInvalidArgument, "sprite '" + sprite.tag + "' is fully transparent");
}

Sprite Recolor(const Sprite& sprite, double hue_degrees) {
  if (!(hue_degrees >= 0.0 && hue_degrees < 360.0)) {
    Fail(ErrorCode::kInvalidArgument, "hue must be in [0,360)");
  }
  Sprite out = sprite;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      uint8_t* p = out.pixels.at(x, y);
      if (p[3] == 0) continue;
      Hsv hsv = RgbToHsv(p[0], p[1], p[2]);
      hsv.h = hue_degrees;
      hsv.s = std::max(hsv.s, 0.5);
      const auto rgb = HsvToRgb(hsv);
      p[0] = rgb[0];
      p[1] = rgb[1];
      p[2] = rgb[2];
    }
  }
  return out;
}

namespace {

void Put(RgbaImage& img, int x, int y, const Hsv& hsv) {
  if (x < 0 || y < 0 || x >= img.width() || y >= img.height()) return;
  const auto rgb = HsvToRgb(hsv);
  uint8_t* p = img.at(x, y);
  p[0] = rgb[0];
  p[1] = rgb[1];
  p[2] = rgb[2];
  p[3] = 255;
}

bool InEllipse(double x, double y, double cx, double cy, double rx, double ry) {
  const double dx = (x - cx) / rx, dy = (y - cy) / ry;
  return dx * dx + dy * dy <= 1.0;
}

std::string Tag(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%02d", prefix, i);
  return buf;
}

}  // namespace

std::vector<Sprite> BuiltinBirdSprites(int count) {
  std::vector<Sprite> out;
  for (int i = 0; i < count; ++i) {
    const int w = 44 + 4 * (i % 4);
    const int h = 32 + 3 * (i % 3);
    RgbaImage img(w, h);
    const double hue = std::fmod(17.0 + 36.0 * i, 360.0);
    const Hsv body{hue, 0.8, 0.85};
    const Hsv wing{std::fmod(hue + 20.0, 360.0), 0.7, 0.6};
    const Hsv beak{40.0, 0.9, 0.95};
    const double bcx = w * 0.45, bcy = h * 0.58, brx = w * 0.30, bry = h * 0.26;
    const double hcx = w * 0.76, hcy = h * 0.36, hr = h * 0.17;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double px = x + 0.5, py = y + 0.5;
        if (InEllipse(px, py, bcx, bcy, brx, bry)) {
          const bool in_wing = InEllipse(px, py, bcx - w * 0.03, bcy - h * 0.02, brx * 0.6, bry * 0.5);
          Put(img, x, y, in_wing ? wing : body);
        } else if (InEllipse(px, py, hcx, hcy, hr, hr)) {
          Put(img, x, y, body);
        } else if (px > hcx + hr * 0.7 && px < w - 1 && std::fabs(py - hcy) < (w - 1 - px) * 0.35) {
          Put(img, x, y, beak);
        } else if (px < bcx - brx * 0.8 && px > 1 && std::fabs(py - (bcy - h * 0.05)) < (bcx - brx * 0.8 - px) * 0.6) {
          Put(img, x, y, wing);  // tail
        }
      }
    }
    out.push_back({std::move(img), Tag("bird", i)});
  }
  return out;
}

std::vector<Sprite> BuiltinTreeSprites(int count) {
  std::vector<Sprite> out;
  for (int i = 0; i < count; ++i) {
    const int w = 36 + 4 * (i % 3);
    const int h = 52 + 4 * (i % 4);
    RgbaImage img(w, h);
    const Hsv trunk{28.0, 0.65, 0.40};
    const Hsv canopy{95.0 + 5.0 * i, 0.7, 0.45 + 0.03 * (i % 5)};
    const double tw = w * 0.16;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double px = x + 0.5, py = y + 0.5;
        if (InEllipse(px, py, w / 2.0, h * 0.38, w * 0.48, h * 0.36)) {
          Put(img, x, y, canopy);
        } else if (py > h * 0.6 && std::fabs(px - w / 2.0) < tw / 2.0) {
          Put(img, x, y, trunk);
        }
      }
    }
    out.push_back({std::move(img), Tag("tree", i)});
  }
  return out;
}

std::vector<Sprite> LoadSpritePool(const fs::path& dir) {
  if (!fs::is_directory(dir)) Fail(ErrorCode::kMissingFile, dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Sprite> out;
  for (const auto& f : files) {
    Sprite s{ReadRgba(f), f.stem().string()};
    ValidateSprite(s);
    out.push_back(std::move(s));
  }
  if (out.empty()) Fail(ErrorCode::kInvalidArgument, "no PNG sprites in " + dir.string());
  return out;
}

}  // namespace metamorph
