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

#include "metrics/scores.h"

#include <cmath>
#include <cstdio>

#include "common/error.h"
#include "common/summation.h"
#include "common/text.h"

namespace metamorph {

ScoreSet ParseScores(const std::string& text) {
  ScoreSet out;
  std::string_view rest = text;
  int line_no = 0;
  while (!rest.empty()) {
    const size_t nl = rest.find('\n');
    std::string_view line = Trim(rest.substr(0, nl));
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto tokens = SplitWhitespace(line);
    const std::string where = "line " + std::to_string(line_no);
    if (tokens.size() < 2) Fail(ErrorCode::kMalformedRow, where + ": expected id and probabilities");
    ScoreRow row;
    row.image_id = std::string(tokens[0]);
    CompensatedSum sum;
    for (size_t i = 1; i < tokens.size(); ++i) {
      auto v = ParseDouble(tokens[i]);
      if (!v || *v < 0.0) Fail(ErrorCode::kMalformedRow, where + ": bad probability '" + std::string(tokens[i]) + "'");
      row.p.push_back(*v);
      sum.Add(*v);
    }
    if (out.rows.empty()) {
      out.n_classes = row.p.size();
    } else if (row.p.size() != out.n_classes) {
      Fail(ErrorCode::kDimensionMismatch, where + ": " + std::to_string(row.p.size()) + " entries, expected " +
                                              std::to_string(out.n_classes));
    }
    const double total = sum.value();
    if (std::fabs(total - 1.0) > kScoresFileTolerance) {
      Fail(ErrorCode::kNotNormalized, where + ": sum " + FormatFixed(total, 9));
    }
    for (double& v : row.p) v /= total;
    out.rows.push_back(std::move(row));
  }
  return out;
}

ScoreSet LoadScores(const std::filesystem::path& path) { return ParseScores(ReadFile(path)); }

std::string FormatScores(const ScoreSet& scores) {
  std::string out;
  char buf[40];
  for (const auto& row : scores.rows) {
    out += row.image_id;
    for (double v : row.p) {
      std::snprintf(buf, sizeof(buf), " %.17g", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void WriteScores(const std::filesystem::path& path, const ScoreSet& scores) {
  WriteFile(path, FormatScores(scores));
}

}  // namespace metamorph
