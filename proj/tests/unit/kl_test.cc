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

#include "metrics/kl.h"

#include <cmath>
#include <random>
#include <vector>

#include "common/error.h"
#include "gtest/gtest.h"

namespace metamorph {
namespace {

// Straight textbook sum, kept separate from the library code.
double DirectKl(const std::vector<double>& p, const std::vector<double>& q) {
  long double total = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) total += static_cast<long double>(p[i]) * std::log(static_cast<long double>(p[i]) / q[i]);
  }
  return static_cast<double>(total);
}

std::vector<double> RandomDistribution(std::mt19937& gen, size_t dim) {
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> p(dim);
  double sum = 0;
  for (auto& v : p) sum += (v = gamma(gen) + 1e-6);
  for (auto& v : p) v /= sum;
  return p;
}

TEST(KlDivergenceTest, MatchesDirectSummation) {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t dim = 2 + trial % 9;
    const auto p = RandomDistribution(gen, dim);
    const auto q = RandomDistribution(gen, dim);
    EXPECT_NEAR(KlDivergence(p, q), DirectKl(p, q), 1e-12);
  }
}

TEST(KlDivergenceTest, SelfDivergenceIsExactlyZero) {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = RandomDistribution(gen, 2 + trial % 9);
    EXPECT_EQ(KlDivergence(p, p), 0.0);
  }
}

TEST(KlDivergenceTest, KnownValue) {
  // KL([1/2,1/2] || [1/4,3/4]) = 1/2 ln 2 + 1/2 ln(2/3).
  const std::vector<double> p = {0.5, 0.5}, q = {0.25, 0.75};
  EXPECT_NEAR(KlDivergence(p, q), 0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0), 1e-15);
}

TEST(KlDivergenceTest, ZeroMassInPIsSkipped) {
  const std::vector<double> p = {1.0, 0.0}, q = {0.5, 0.5};
  EXPECT_NEAR(KlDivergence(p, q), std::log(2.0), 1e-15);
}

TEST(KlDivergenceTest, Errors) {
  const std::vector<double> p = {0.5, 0.5}, q = {1.0, 0.0}, r = {1.0};
  try {
    KlDivergence(p, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularSupport);
  }
  try {
    KlDivergence(p, r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ValidateProbabilityTest, Tolerance) {
  EXPECT_NO_THROW(ValidateProbability(std::vector<double>{0.5, 0.5 + 1e-12}));
  EXPECT_THROW(ValidateProbability(std::vector<double>{0.5, 0.4}), Error);
  EXPECT_THROW(ValidateProbability(std::vector<double>{1.5, -0.5}), Error);
}

}  // namespace
}  // namespace metamorph
