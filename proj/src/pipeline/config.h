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

#ifndef METAMORPH_PIPELINE_CONFIG_H_
#define METAMORPH_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "modelio/mock_model.h"
#include "modelio/run_model.h"
#include "mrengine/relation.h"
#include "mutate/test_case.h"

namespace metamorph {

struct ModelSpec {
  enum class Kind { kMock, kCommand };
  Kind kind = Kind::kMock;
  MockConfig mock;
  ModelCommand command;
};

// "builtin" runs the bundled hue-histogram classifier over the generated
// images; otherwise scores come from `scores_template`, where "{test_case}"
// is replaced by the case name (the baseline is "baseline").
struct ClassifierSpec {
  bool builtin = true;
  std::string scores_template;
};

struct RunConfig {
  std::filesystem::path dataset_root;
  std::vector<TestCaseSpec> test_cases;
  ModelSpec model;
  ClassifierSpec classifier;
  mr::MRParameters thresholds;
  size_t n_splits = 10;
  size_t n_classes = 10;
  uint64_t seed = 0;
  std::filesystem::path output_root;
  unsigned workers = 1;
  std::filesystem::path likert_sessions;  // optional
  std::vector<mr::MRSpec> extra_mrs;      // user relations from mr_files
};

inline constexpr const char* kBaselineName = "baseline";

// Relative paths resolve against `base_dir` (the config file's directory).
// Test cases given by preset name, or objects without a "seed", take the
// config seed. Throws InvalidConfig.
RunConfig RunConfigFromJson(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

// Throws InvalidConfig: no test cases, duplicate or reserved names, bad
// thresholds, n_splits == 0, n_classes < 2, missing dataset or output root.
void ValidateRunConfig(const RunConfig& cfg);

// Summary of the settings that shape results, for the report stamp. Paths
// are left out so reports do not depend on where a run happened.
nlohmann::json RunSettingsToJson(const RunConfig& cfg);

}  // namespace metamorph

#endif  // METAMORPH_PIPELINE_CONFIG_H_
