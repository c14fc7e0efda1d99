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

#ifndef METAMORPH_MODELIO_RUN_MODEL_H_
#define METAMORPH_MODELIO_RUN_MODEL_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace metamorph {

// Shell command template for the model under test. `{input_dir}` and
// `{output_dir}` must each appear exactly once; they are replaced by
// single-quoted absolute paths.
struct ModelCommand {
  std::string command_template;
  double timeout_seconds = 3600.0;
  std::filesystem::path workdir;  // empty: inherit
};

struct GenerationResult {
  std::filesystem::path output_dir;
  std::vector<std::pair<std::string, std::filesystem::path>> images;  // (id, path), sorted
  std::string model_log;
  double wallclock_seconds = 0.0;
};

inline constexpr const char* kManifestEnvVar = "METAMORPH_MANIFEST";

// Throws InvalidConfig when a placeholder is missing or repeated.
void ValidateCommand(const ModelCommand& cmd);

std::string ShellQuote(const std::string& s);

// Runs the model on `mutated` (the output of ApplyTestCase), writing samples
// into `output_dir`. The child inherits the environment plus
// METAMORPH_MANIFEST=<mutated>/manifest.json; stdout and stderr are captured
// together. Throws NonZeroExit (with the log tail), Timeout, NoOutputImages.
GenerationResult RunModel(const ModelCommand& cmd, const std::filesystem::path& mutated,
                          const std::filesystem::path& output_dir);

}  // namespace metamorph

#endif  // METAMORPH_MODELIO_RUN_MODEL_H_
