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

#include "modelio/mock_model.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "common/parallel.h"
#include "common/rng.h"
#include "common/text.h"
#include "image/codec.h"
#include "image/color.h"

namespace metamorph {

namespace fs = std::filesystem;

namespace {
constexpr int kSampleSize = 64;

std::string FileStem(const std::string& id) {
  std::string out = id;
  std::replace(out.begin(), out.end(), '/', '_');
  return out;
}
}  // namespace

void Desaturate(RgbImage& img, double amount) {
  amount = std::clamp(amount, 0.0, 1.0);
  if (amount == 0.0) return;
  auto bytes = img.bytes();
  for (size_t i = 0; i < bytes.size(); i += 3) {
    const double luma = Luma(bytes[i], bytes[i + 1], bytes[i + 2]);
    for (int c = 0; c < 3; ++c) {
      const double v = bytes[i + c] + amount * (luma - bytes[i + c]);
      bytes[i + c] = static_cast<uint8_t>(std::clamp<int64_t>(RoundHalfAway(v), 0, 255));
    }
  }
}

RgbImage RenderMockSample(const std::string& image_id, double occluded_fraction, const MockConfig& cfg) {
  Rng rng(DeriveSeed(cfg.seed, image_id));
  const double bg_hue = rng.Uniform(0, 360);
  const double bird_hue = rng.Uniform(0, 360);
  const double cx = rng.Uniform(20, 44), cy = rng.Uniform(20, 44);
  const double rx = rng.Uniform(10, 18), ry = rng.Uniform(7, 13);
  const double noise = cfg.k_is_noise * occluded_fraction * 64.0;

  RgbImage img(kSampleSize, kSampleSize);
  for (int y = 0; y < kSampleSize; ++y) {
    for (int x = 0; x < kSampleSize; ++x) {
      const double dx = (x + 0.5 - cx) / rx, dy = (y + 0.5 - cy) / ry;
      Hsv hsv;
      if (dx * dx + dy * dy <= 1.0) {
        hsv = {bird_hue, 0.9, 0.75 + 0.15 * dy};
      } else {
        const double texture = 0.06 * std::sin(0.4 * x) * std::cos(0.3 * y) + 0.03 * rng.Uniform(-1, 1);
        hsv = {std::fmod(bg_hue + 0.5 * y, 360.0), 0.65, std::clamp(0.7 + texture, 0.0, 1.0)};
      }
      auto rgb = HsvToRgb(hsv);
      uint8_t* p = img.at(x, y);
      for (int c = 0; c < 3; ++c) {
        double v = rgb[c];
        if (noise > 0) v += rng.Uniform(-noise, noise);
        p[c] = static_cast<uint8_t>(std::clamp<int64_t>(RoundHalfAway(v), 0, 255));
      }
    }
  }
  Desaturate(img, std::min(1.0, cfg.k_desat * occluded_fraction));
  return img;
}

double MockGenerate(const MutationManifest& manifest, const MockConfig& cfg, const fs::path& out_dir) {
  if (!(cfg.k_desat >= 0.0)) Fail(ErrorCode::kInvalidArgument, "k_desat must be >= 0");
  if (!(cfg.k_is_noise >= 0.0)) Fail(ErrorCode::kInvalidArgument, "k_is_noise must be >= 0");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + out_dir.string());
  const double fraction = manifest.OccludedFraction();
  ParallelFor(manifest.train_ids.size(), cfg.workers, [&](size_t i) {
    const std::string& id = manifest.train_ids[i];
    WritePng(out_dir / (FileStem(id) + ".png"), RenderMockSample(id, fraction, cfg));
  });
  return fraction;
}

}  // namespace metamorph
