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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "common/error.h"
#include "gtest/gtest.h"

namespace metamorph {
namespace {

ScoreSet FromRows(const std::vector<std::vector<double>>& rows) {
  ScoreSet s;
  s.n_classes = rows.front().size();
  for (size_t i = 0; i < rows.size(); ++i) s.rows.push_back({std::to_string(i), rows[i]});
  return s;
}

ScoreSet RandomScores(std::mt19937& gen, size_t n, size_t dim) {
  std::exponential_distribution<double> e(1.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
  for (auto& r : rows) {
    double sum = 0;
    for (auto& v : r) sum += (v = e(gen) + 1e-9);
    for (auto& v : r) v /= sum;
  }
  return FromRows(rows);
}

// Independent reference: marginal, per-row KL, exp of the mean, then mean
// and sample std over contiguous splits.
ISResult Reference(const ScoreSet& s, size_t splits) {
  std::vector<double> scores;
  const size_t n = s.rows.size();
  for (size_t k = 0; k < splits; ++k) {
    const size_t b = k * n / splits, e = (k + 1) * n / splits;
    std::vector<long double> marginal(s.n_classes, 0);
    for (size_t i = b; i < e; ++i) {
      for (size_t c = 0; c < s.n_classes; ++c) marginal[c] += s.rows[i].p[c];
    }
    for (auto& m : marginal) m /= (e - b);
    long double kl = 0;
    for (size_t i = b; i < e; ++i) {
      for (size_t c = 0; c < s.n_classes; ++c) {
        const long double p = s.rows[i].p[c];
        if (p > 0) kl += p * std::log(p / marginal[c]);
      }
    }
    scores.push_back(static_cast<double>(std::exp(kl / (e - b))));
  }
  ISResult r;
  r.n_splits = splits;
  r.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / splits;
  if (splits > 1) {
    double sq = 0;
    for (double v : scores) sq += (v - r.mean) * (v - r.mean);
    r.std = std::sqrt(sq / (splits - 1));
  }
  return r;
}

TEST(InceptionScoreTest, IdenticalRowsScoreOne) {
  const ScoreSet s = FromRows(std::vector<std::vector<double>>(100, {0.2, 0.3, 0.5}));
  const ISResult r = InceptionScore(s, 10);
  EXPECT_NEAR(r.mean, 1.0, 1e-9);
  EXPECT_NEAR(r.std, 0.0, 1e-9);
}

TEST(InceptionScoreTest, BalancedOneHotScoresClassCount) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> r(4, 0.0);
    r[i % 4] = 1.0;
    rows.push_back(r);
  }
  const ISResult r = InceptionScore(FromRows(rows), 1);
  EXPECT_NEAR(r.mean, 4.0, 1e-9);
  EXPECT_EQ(r.std, 0.0);
  EXPECT_EQ(r.n_splits, 1u);
}

TEST(InceptionScoreTest, MatchesReference) {
  std::mt19937 gen(11);
  for (size_t splits : {1u, 3u, 10u}) {
    const ScoreSet s = RandomScores(gen, 97, 6);
    const ISResult got = InceptionScore(s, splits);
    const ISResult want = Reference(s, splits);
    EXPECT_NEAR(got.mean, want.mean, 1e-12);
    EXPECT_NEAR(got.std, want.std, 1e-12);
  }
}

TEST(InceptionScoreTest, ClassPermutationInvariance) {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ScoreSet s = RandomScores(gen, 40, 5);
    std::vector<size_t> perm(5);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    ScoreSet t = s;
    for (size_t i = 0; i < s.rows.size(); ++i) {
      for (size_t c = 0; c < 5; ++c) t.rows[i].p[perm[c]] = s.rows[i].p[c];
    }
    EXPECT_NEAR(InceptionScore(s, 4).mean, InceptionScore(t, 4).mean, 1e-12);
  }
}

TEST(InceptionScoreTest, BoundedByClassCount) {
  std::mt19937 gen(9);
  const ISResult r = InceptionScore(RandomScores(gen, 50, 7), 5);
  EXPECT_GE(r.mean, 1.0);
  EXPECT_LE(r.mean, 7.0);
}

TEST(InceptionScoreTest, Errors) {
  ScoreSet empty;
  try {
    InceptionScore(empty, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyScoreSet);
  }
  const ScoreSet five = FromRows(std::vector<std::vector<double>>(5, {0.5, 0.5}));
  try {
    InceptionScore(five, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooFewRows);
  }
}

}  // namespace
}  // namespace metamorph
