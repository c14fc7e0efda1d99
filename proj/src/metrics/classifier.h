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

#ifndef METAMORPH_METRICS_CLASSIFIER_H_
#define METAMORPH_METRICS_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "image/raster.h"
#include "metrics/scores.h"

namespace metamorph {

inline constexpr int kHueBins = 12;

struct NamedImage {
  std::string id;
  RgbImage pixels;
};

// Saturation-weighted hue histogram (kHueBins bins, normalised by pixel
// count) so grey pixels contribute nothing.
std::vector<double> HueHistogram(const RgbImage& img);

// Deterministic stand-in for an external classifier: softmax of a fixed
// seeded Gaussian projection of HueHistogram. Requires n_classes >= 2.
ScoreSet BuiltinClassifier(const std::vector<NamedImage>& images, size_t n_classes, uint64_t seed);

// Every *.png / *.jpg / *.jpeg under `dir`, sorted by relative path; the id
// is the file stem.
std::vector<std::filesystem::path> ListImages(const std::filesystem::path& dir);
std::vector<NamedImage> LoadImageDirectory(const std::filesystem::path& dir);

}  // namespace metamorph

#endif  // METAMORPH_METRICS_CLASSIFIER_H_
