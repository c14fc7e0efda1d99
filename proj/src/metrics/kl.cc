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

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.h"
#include "common/summation.h"

namespace metamorph {

void ValidateProbability(std::span<const double> p, double tolerance) {
  CompensatedSum sum;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) Fail(ErrorCode::kInvalidArgument, "probability entry out of range");
    sum.Add(v);
  }
  if (std::fabs(sum.value() - 1.0) > tolerance) {
    Fail(ErrorCode::kNotNormalized, "sum " + std::to_string(sum.value()));
  }
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    Fail(ErrorCode::kDimensionMismatch, std::to_string(p.size()) + " vs " + std::to_string(q.size()));
  }
  CompensatedSum sum;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) Fail(ErrorCode::kSingularSupport, "p > 0 where q = 0 at index " + std::to_string(i));
    sum.Add(p[i] * std::log(p[i] / q[i]));
  }
  // Rounding can leave a tiny negative residue for p close to q.
  return std::max(0.0, sum.value());
}

}  // namespace metamorph
