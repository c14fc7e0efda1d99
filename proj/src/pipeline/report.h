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

#ifndef METAMORPH_PIPELINE_REPORT_H_
#define METAMORPH_PIPELINE_REPORT_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrengine/derivation_log.h"
#include "mrengine/relation.h"

namespace metamorph {

// A case that did not produce a record.
struct CaseFailure {
  std::string error;  // ErrorCodeName
  std::string message;
};

struct StudyReport {
  std::vector<std::string> order;  // baseline first, then configured order
  mr::RecordMap records;
  std::map<std::string, CaseFailure> failures;
  std::vector<mr::MRVerdict> verdicts;
  std::vector<mr::AnomalyFlag> anomalies;
  mr::DerivationLog derivation;
  nlohmann::json environment = nlohmann::json::object();
  nlohmann::json artifacts = nlohmann::json::object();  // per case, relative paths
};

enum class ReportFormat { kTable, kJson, kMarkdown };

// Throws InvalidArgument.
ReportFormat ParseReportFormat(const std::string& name);

inline constexpr const char* kReportFile = "report.json";

nlohmann::json ReportToJson(const StudyReport& r);
StudyReport ReportFromJson(const nlohmann::json& j);
StudyReport ReadReport(const std::filesystem::path& path);

// table: aligned plain text with IS, Likert and tint columns plus verdicts;
// json: ReportToJson, sorted keys, two-space indent; markdown: the same
// table, an IS-per-case chart series and the derivation log.
std::string RenderReport(const StudyReport& r, ReportFormat format);

}  // namespace metamorph

#endif  // METAMORPH_PIPELINE_REPORT_H_
