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

#ifndef METAMORPH_DATASET_SYNTHETIC_H_
#define METAMORPH_DATASET_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>

namespace metamorph {

struct SyntheticOptions {
  int n_images = 50;
  int n_classes = 5;
  int width = 96;
  int height = 96;
  double test_fraction = 0.0;
  uint64_t seed = 1;
};

// Writes a small CUB-layout dataset of procedurally drawn PNGs: a textured
// background with one elliptical "bird" inside the annotated focal box. The
// focal box covers roughly 6-20% of the frame so unobstructed placements
// exist. Deterministic in the options.
void WriteSyntheticDataset(const std::filesystem::path& root, const SyntheticOptions& opts);

}  // namespace metamorph

#endif  // METAMORPH_DATASET_SYNTHETIC_H_
