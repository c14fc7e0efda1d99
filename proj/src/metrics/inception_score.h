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

#ifndef METAMORPH_METRICS_INCEPTION_SCORE_H_
#define METAMORPH_METRICS_INCEPTION_SCORE_H_

#include <cstddef>

#include "metrics/scores.h"

namespace metamorph {

inline constexpr size_t kDefaultSplits = 10;

struct ISResult {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation over splits
  size_t n_splits = 0;

  friend bool operator==(const ISResult&, const ISResult&) = default;
};

// Score of one group of rows: exp(mean_x KL(p(y|x) || p(y))) where p(y) is the
// arithmetic mean of the rows.
double SplitScore(std::span<const ScoreRow> rows);

// Rows are cut into n_splits contiguous, near-equal splits in input order
// (split k holds rows [k*n/s, (k+1)*n/s)). Throws EmptyScoreSet, TooFewRows.
ISResult InceptionScore(const ScoreSet& scores, size_t n_splits = kDefaultSplits);

}  // namespace metamorph

#endif  // METAMORPH_METRICS_INCEPTION_SCORE_H_
