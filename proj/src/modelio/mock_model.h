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

#ifndef METAMORPH_MODELIO_MOCK_MODEL_H_
#define METAMORPH_MODELIO_MOCK_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "image/raster.h"
#include "mutate/apply.h"

namespace metamorph {

// Stand-in for a trained generator that exhibits a known defect: outputs get
// washed out in proportion to how much of the training set was modified.
struct MockConfig {
  double k_desat = 0.5;     // desaturation = min(1, k_desat * occluded_fraction)
  double k_is_noise = 0.0;  // per-pixel colour noise amplitude, also scaled by the fraction
  uint64_t seed = 0;
  unsigned workers = 1;
};

// One sample for training image `image_id`: a coloured ellipse on a textured
// background. Depends only on (cfg.seed, image_id, fraction).
RgbImage RenderMockSample(const std::string& image_id, double occluded_fraction, const MockConfig& cfg);

// Renders `<id>.png` into `out_dir` for every training id in the manifest and
// returns the fraction used.
double MockGenerate(const MutationManifest& manifest, const MockConfig& cfg, const std::filesystem::path& out_dir);

// Pulls `value` toward its luma by `amount` in [0, 1].
void Desaturate(RgbImage& img, double amount);

}  // namespace metamorph

#endif  // METAMORPH_MODELIO_MOCK_MODEL_H_
