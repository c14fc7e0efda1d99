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

#ifndef METAMORPH_MUTATE_APPLY_H_
#define METAMORPH_MUTATE_APPLY_H_

#include <filesystem>
#include <string>
#include <vector>

#include "common/rng.h"
#include "dataset/dataset.h"
#include "json.hpp"
#include "mutate/placement.h"
#include "mutate/test_case.h"

namespace metamorph {

inline constexpr const char* kManifestFile = "manifest.json";

// Exactly round(proportion * ids.size()) ids, uniform without replacement,
// returned in input order (selection sampling).
std::vector<std::string> SelectSubset(const std::vector<std::string>& ids, double proportion, Rng& rng);

struct SkipRecord {
  std::string image_id;
  std::string reason;

  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

struct MutationManifest {
  nlohmann::json spec;                   // TestCaseToJson
  std::vector<std::string> train_ids;    // the training set the selection was drawn from
  std::vector<std::string> selected;
  std::vector<PlacementRecord> placements;
  std::vector<std::string> output_paths;  // parallel to placements, relative to images/
  std::vector<SkipRecord> skips;
  std::string tool_version;

  // |placements| / |train set|, 0 for an empty training set.
  double OccludedFraction() const;
};

nlohmann::json ManifestToJson(const MutationManifest& m);
MutationManifest ManifestFromJson(const nlohmann::json& j);
MutationManifest ReadManifest(const std::filesystem::path& path);

struct ApplyOptions {
  unsigned workers = 1;
};

// Copies `ds` into `out` (annotation files and listed images byte for byte),
// mutates the selected training images in place, and writes manifest.json.
// Each image draws from its own stream seeded by hash(spec.seed, image_id),
// so the result does not depend on worker count. Mutated JPEGs are written as
// PNG next to the original name and images.txt is updated for them.
MutationManifest ApplyTestCase(const AnnotatedDataset& ds, const TestCaseSpec& spec,
                               const std::filesystem::path& out, const ApplyOptions& opts = {});

std::string ToolVersion();

}  // namespace metamorph

#endif  // METAMORPH_MUTATE_APPLY_H_
