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

#include "dataset/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "common/error.h"
#include "common/rng.h"
#include "common/text.h"
#include "image/codec.h"
#include "image/color.h"
#include "image/raster.h"

namespace metamorph {

namespace fs = std::filesystem;

namespace {

std::string ClassDir(int cls) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%03d.Synthetic_Class_%d", cls, cls);
  return buf;
}

void Paint(RgbImage& img, int x, int y, const Hsv& hsv) {
  auto rgb = HsvToRgb(hsv);
  uint8_t* p = img.at(x, y);
  p[0] = rgb[0];
  p[1] = rgb[1];
  p[2] = rgb[2];
}

}  // namespace

void WriteSyntheticDataset(const fs::path& root, const SyntheticOptions& opts) {
  if (opts.n_images < 0 || opts.n_classes < 1 || opts.width < 16 || opts.height < 16) {
    Fail(ErrorCode::kInvalidArgument, "synthetic dataset options out of range");
  }
  fs::create_directories(root / "images");
  std::ostringstream images, boxes, classes, labels, split;
  for (int c = 1; c <= opts.n_classes; ++c) {
    classes << c << ' ' << ClassDir(c) << '\n';
    fs::create_directories(root / "images" / ClassDir(c));
  }
  Rng split_rng(DeriveSeed(opts.seed, "split"));
  for (int i = 1; i <= opts.n_images; ++i) {
    const std::string id = std::to_string(i);
    Rng rng(DeriveSeed(opts.seed, id));
    const int cls = 1 + static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(opts.n_classes)));
    const int W = opts.width, H = opts.height;

    const double bg_hue = rng.Uniform(0, 360);
    const double bg_sat = rng.Uniform(0.35, 0.7);
    RgbImage img(W, H);
    for (int y = 0; y < H; ++y) {
      for (int x = 0; x < W; ++x) {
        const double ripple = 0.08 * std::sin(0.35 * x + 0.21 * y) + 0.04 * rng.Uniform(-1, 1);
        Paint(img, x, y, {bg_hue + 20.0 * y / H, bg_sat, std::clamp(0.6 + ripple, 0.0, 1.0)});
      }
    }

    // Focal box: 25-45% of each side, anywhere in frame.
    const int bw = static_cast<int>(W * rng.Uniform(0.25, 0.45));
    const int bh = static_cast<int>(H * rng.Uniform(0.25, 0.45));
    const int bx = static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(W - bw + 1)));
    const int by = static_cast<int>(rng.UniformBelow(static_cast<uint64_t>(H - bh + 1)));
    const double bird_hue = std::fmod(cls * 360.0 / opts.n_classes + rng.Uniform(-10, 10) + 360.0, 360.0);
    const double cx = bx + bw / 2.0, cy = by + bh / 2.0;
    for (int y = by; y < by + bh; ++y) {
      for (int x = bx; x < bx + bw; ++x) {
        const double dx = (x + 0.5 - cx) / (bw / 2.0), dy = (y + 0.5 - cy) / (bh / 2.0);
        if (dx * dx + dy * dy <= 1.0) {
          Paint(img, x, y, {bird_hue, 0.85, 0.55 + 0.3 * (1.0 - dy) / 2.0});
        }
      }
    }

    const std::string rel = ClassDir(cls) + "/img_" + id + ".png";
    WritePng(root / "images" / rel, img);
    images << id << ' ' << rel << '\n';
    boxes << id << ' ' << bx << ".0 " << by << ".0 " << bw << ".0 " << bh << ".0\n";
    labels << id << ' ' << cls << '\n';
    const bool is_test = split_rng.Uniform01() < opts.test_fraction;
    split << id << ' ' << (is_test ? 0 : 1) << '\n';
  }
  WriteFile(root / "images.txt", images.str());
  WriteFile(root / "bounding_boxes.txt", boxes.str());
  WriteFile(root / "classes.txt", classes.str());
  WriteFile(root / "image_class_labels.txt", labels.str());
  WriteFile(root / "train_test_split.txt", split.str());
}

}  // namespace metamorph
