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

#ifndef METAMORPH_METRICS_KL_H_
#define METAMORPH_METRICS_KL_H_

#include <span>
#include <vector>

namespace metamorph {

// Conditional or marginal class distribution p(y|x) / p(y).
using ProbabilityVector = std::vector<double>;

inline constexpr double kProbabilityTolerance = 1e-9;

// Throws InvalidArgument if any entry is negative/non-finite or the entries do
// not sum to 1 within `tolerance`.
void ValidateProbability(std::span<const double> p, double tolerance = kProbabilityTolerance);

// sum_i p_i ln(p_i / q_i), natural log, with 0 ln(0/q) = 0. Throws
// DimensionMismatch, or SingularSupport when p_i > 0 where q_i = 0.
double KlDivergence(std::span<const double> p, std::span<const double> q);

}  // namespace metamorph

#endif  // METAMORPH_METRICS_KL_H_
