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

#include "metrics/inception_score.h"

#include <cmath>
#include <string>

#include "common/error.h"
#include "common/summation.h"

namespace metamorph {

double SplitScore(std::span<const ScoreRow> rows) {
  if (rows.empty()) Fail(ErrorCode::kEmptyScoreSet, "split has no rows");
  const size_t dim = rows.front().p.size();
  ProbabilityVector marginal(dim);
  for (size_t c = 0; c < dim; ++c) {
    CompensatedSum s;
    for (const auto& row : rows) {
      if (row.p.size() != dim) Fail(ErrorCode::kDimensionMismatch, "row " + row.image_id);
      s.Add(row.p[c]);
    }
    marginal[c] = s.value() / static_cast<double>(rows.size());
  }
  CompensatedSum kl;
  for (const auto& row : rows) kl.Add(KlDivergence(row.p, marginal));
  return std::exp(kl.value() / static_cast<double>(rows.size()));
}

ISResult InceptionScore(const ScoreSet& scores, size_t n_splits) {
  const size_t n = scores.rows.size();
  if (n == 0) Fail(ErrorCode::kEmptyScoreSet, "no rows");
  if (n_splits == 0 || n < n_splits) {
    Fail(ErrorCode::kTooFewRows, std::to_string(n) + " rows for " + std::to_string(n_splits) + " splits");
  }
  std::vector<double> split_scores(n_splits);
  const std::span<const ScoreRow> all(scores.rows);
  for (size_t k = 0; k < n_splits; ++k) {
    const size_t begin = k * n / n_splits;
    const size_t end = (k + 1) * n / n_splits;
    split_scores[k] = SplitScore(all.subspan(begin, end - begin));
  }
  CompensatedSum sum;
  for (double s : split_scores) sum.Add(s);
  ISResult out;
  out.n_splits = n_splits;
  out.mean = sum.value() / static_cast<double>(n_splits);
  if (n_splits > 1) {
    CompensatedSum sq;
    for (double s : split_scores) sq.Add((s - out.mean) * (s - out.mean));
    out.std = std::sqrt(sq.value() / static_cast<double>(n_splits - 1));
  }
  return out;
}

}  // namespace metamorph
