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

#ifndef METAMORPH_COMMON_TEXT_H_
#define METAMORPH_COMMON_TEXT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace metamorph {

std::vector<std::string_view> SplitWhitespace(std::string_view line);
std::string_view Trim(std::string_view s);

std::optional<double> ParseDouble(std::string_view token);
std::optional<int64_t> ParseInt(std::string_view token);

// Half-away-from-zero rounding, the single rounding rule of the project.
int64_t RoundHalfAway(double v);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// Writes to a sibling temp file and renames over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

// Formats "mean(std)" with std expressed in units of the last printed digit
// of the mean: FormatMeanStd(4.16, 0.03) == "4.16(3)".
std::string FormatMeanStd(double mean, double std, int decimals = 2);

std::string FormatFixed(double v, int decimals);

}  // namespace metamorph

#endif  // METAMORPH_COMMON_TEXT_H_
