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

#ifndef METAMORPH_METRICS_SCORES_H_
#define METAMORPH_METRICS_SCORES_H_

#include <filesystem>
#include <string>
#include <vector>

#include "metrics/kl.h"

namespace metamorph {

struct ScoreRow {
  std::string image_id;
  ProbabilityVector p;

  friend bool operator==(const ScoreRow&, const ScoreRow&) = default;
};

// Per-image classifier outputs; all rows share n_classes.
struct ScoreSet {
  std::vector<ScoreRow> rows;
  size_t n_classes = 0;

  friend bool operator==(const ScoreSet&, const ScoreSet&) = default;
};

// Rows printed with limited precision rarely sum to 1 within 1e-9, so files
// are accepted within this slack and each row is then renormalised.
inline constexpr double kScoresFileTolerance = 1e-6;

// `<image-id> <p_1> ... <p_C>` per line, whitespace separated; blank lines
// and lines starting with '#' are ignored. Throws MalformedRow(line),
// NotNormalized(line, sum), DimensionMismatch.
ScoreSet ParseScores(const std::string& text);
ScoreSet LoadScores(const std::filesystem::path& path);

// Round-trippable text form (17 significant digits).
std::string FormatScores(const ScoreSet& scores);
void WriteScores(const std::filesystem::path& path, const ScoreSet& scores);

}  // namespace metamorph

#endif  // METAMORPH_METRICS_SCORES_H_
