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

#include "metrics/classifier.h"

#include <algorithm>
#include <cmath>

#include "common/error.h"
#include "common/rng.h"
#include "common/summation.h"
#include "image/codec.h"
#include "image/color.h"

namespace metamorph {

namespace fs = std::filesystem;

namespace {
// Logit gain: large enough that vivid images get confident predictions, so
// desaturation visibly flattens them.
constexpr double kLogitGain = 12.0;
}  // namespace

std::vector<double> HueHistogram(const RgbImage& img) {
  std::vector<double> hist(kHueBins, 0.0);
  if (img.empty()) return hist;
  std::vector<CompensatedSum> acc(kHueBins);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const uint8_t* p = img.at(x, y);
      const Hsv hsv = RgbToHsv(p[0], p[1], p[2]);
      if (hsv.s == 0.0) continue;
      const int bin = std::min(kHueBins - 1, static_cast<int>(hsv.h / (360.0 / kHueBins)));
      acc[bin].Add(hsv.s);
    }
  }
  for (int b = 0; b < kHueBins; ++b) hist[b] = acc[b].value() / static_cast<double>(img.pixel_count());
  return hist;
}

ScoreSet BuiltinClassifier(const std::vector<NamedImage>& images, size_t n_classes, uint64_t seed) {
  if (n_classes < 2) Fail(ErrorCode::kInvalidArgument, "builtin classifier needs n_classes >= 2");
  Rng rng(DeriveSeed(seed, "builtin-classifier"));
  std::vector<std::vector<double>> weights(n_classes, std::vector<double>(kHueBins));
  for (auto& row : weights) {
    for (double& w : row) w = rng.Normal();
  }
  ScoreSet out;
  out.n_classes = n_classes;
  for (const auto& image : images) {
    const auto feat = HueHistogram(image.pixels);
    std::vector<double> logits(n_classes);
    for (size_t c = 0; c < n_classes; ++c) {
      CompensatedSum dot;
      for (int b = 0; b < kHueBins; ++b) dot.Add(weights[c][b] * feat[b]);
      logits[c] = kLogitGain * dot.value();
    }
    const double top = *std::max_element(logits.begin(), logits.end());
    CompensatedSum z;
    for (double& l : logits) {
      l = std::exp(l - top);
      z.Add(l);
    }
    for (double& l : logits) l /= z.value();
    out.rows.push_back({image.id, std::move(logits)});
  }
  return out;
}

std::vector<fs::path> ListImages(const fs::path& dir) {
  if (!fs::is_directory(dir)) Fail(ErrorCode::kMissingFile, dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end(), [&](const fs::path& a, const fs::path& b) {
    return a.lexically_relative(dir).generic_string() < b.lexically_relative(dir).generic_string();
  });
  return out;
}

std::vector<NamedImage> LoadImageDirectory(const fs::path& dir) {
  std::vector<NamedImage> out;
  for (const auto& p : ListImages(dir)) out.push_back({p.stem().string(), ReadRgb(p)});
  return out;
}

}  // namespace metamorph
