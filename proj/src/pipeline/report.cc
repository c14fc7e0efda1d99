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

#include "pipeline/report.h"

#include <algorithm>
#include <sstream>

#include "common/error.h"
#include "common/text.h"

namespace metamorph {

using nlohmann::json;

ReportFormat ParseReportFormat(const std::string& name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  Fail(ErrorCode::kInvalidArgument, "unknown report format '" + name + "'");
}

json ReportToJson(const StudyReport& r) {
  json records = json::object();
  for (const auto& name : r.order) {
    if (auto it = r.records.find(name); it != r.records.end()) {
      records[name] = mr::RecordToJson(it->second);
    } else if (auto f = r.failures.find(name); f != r.failures.end()) {
      records[name] = {{"status", "inconclusive"}, {"error", f->second.error}, {"message", f->second.message}};
    }
  }
  // Records that were supplied without an order entry (e.g. mr eval input).
  for (const auto& [name, rec] : r.records) {
    if (!records.contains(name)) records[name] = mr::RecordToJson(rec);
  }
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(mr::VerdictToJson(v));
  json anomalies = json::array();
  for (const auto& a : r.anomalies) anomalies.push_back(mr::AnomalyToJson(a));
  return {{"order", r.order},         {"records", records},
          {"verdicts", verdicts},     {"anomalies", anomalies},
          {"derivation_log", r.derivation.ToJson()},
          {"environment", r.environment}, {"artifacts", r.artifacts}};
}

StudyReport ReportFromJson(const json& j) {
  StudyReport r;
  try {
    r.order = j.at("order").get<std::vector<std::string>>();
    for (const auto& [name, value] : j.at("records").items()) {
      if (value.contains("status")) {
        r.failures[name] = {value.value("error", std::string()), value.value("message", std::string())};
      } else {
        r.records.emplace(name, mr::RecordFromJson(name, value));
      }
    }
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(mr::VerdictFromJson(v));
    for (const auto& a : j.at("anomalies")) r.anomalies.push_back(mr::AnomalyFromJson(a));
    r.derivation = mr::DerivationLog::FromJson(j.at("derivation_log"));
    r.environment = j.value("environment", json::object());
    r.artifacts = j.value("artifacts", json::object());
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("malformed report: ") + e.what());
  }
  return r;
}

StudyReport ReadReport(const std::filesystem::path& path) {
  std::filesystem::path file = path;
  if (std::filesystem::is_directory(file)) file /= kReportFile;
  const std::string text = ReadFile(file);
  try {
    return ReportFromJson(json::parse(text));
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kInvalidConfig, file.string() + ": " + e.what());
  }
}

namespace {

std::string LikertCell(const std::optional<mr::MeanStd>& m) {
  if (!m) return "-";
  return FormatMeanStd(m->mean, m->std);
}

std::vector<std::vector<std::string>> TableRows(const StudyReport& r) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Test Cases", "IS", "Semantic Likert", "Realistic Likert", "Tint", "Images"});
  for (const auto& name : r.order) {
    if (auto it = r.records.find(name); it != r.records.end()) {
      const mr::MetricRecord& rec = it->second;
      rows.push_back({name, FormatMeanStd(rec.is_result.mean, rec.is_result.std), LikertCell(rec.likert_semantic),
                      LikertCell(rec.likert_realistic), FormatFixed(rec.tint, 3),
                      rec.n_generated ? std::to_string(rec.n_generated) : "-"});
    } else {
      const auto f = r.failures.find(name);
      const std::string why = f == r.failures.end() ? "no record" : f->second.error;
      rows.push_back({name, "inconclusive (" + why + ")", "-", "-", "-", "-"});
    }
  }
  return rows;
}

std::string Thresholds(const StudyReport& r) {
  const json t = r.environment.value("thresholds", json::object());
  auto get = [&](const char* k, double d) { return FormatFixed(t.value(k, d), 2); };
  return "epsilon_is " + get("epsilon_is", mr::kDefaultEpsilonIs) + ", tau_tint " +
         get("tau_tint", mr::kDefaultTauTint) + ", epsilon_similar " +
         get("epsilon_similar", mr::kDefaultEpsilonSimilar);
}

std::string GroupSummary(const mr::MRVerdict& v) {
  std::string out;
  for (const auto& [g, o] : v.groups) {
    out += (out.empty() ? "" : ", ") + g + ": " + std::string(mr::OutcomeName(o));
  }
  return out;
}

std::string EvidenceLine(const mr::Evidence& e) {
  std::string out = e.group.empty() ? "" : "[" + e.group + "] ";
  out += e.quantity + " = " + FormatFixed(e.value, 3);
  if (e.comparison == "<=" || e.comparison == ">") {
    out += " (needs " + e.comparison + " " + FormatFixed(e.threshold, 3) + ")";
  } else {
    out += " (needs " + e.comparison + " 0)";
  }
  out += e.passed ? " pass" : " fail";
  return out;
}

constexpr const char* kTintNote =
    "Tint is 1 - mean HSV saturation over generated images; it stands in for the visual grey-tint judgement.";

std::string RenderTable(const StudyReport& r) {
  const auto rows = TableRows(r);
  std::vector<size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    std::string s;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) s += " | ";
      s += row[c] + std::string(width[c] - row[c].size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  line(rows[0]);
  std::string rule;
  for (size_t c = 0; c < width.size(); ++c) rule += (c ? "-+-" : "") + std::string(width[c], '-');
  out << rule << "\n";
  for (size_t i = 1; i < rows.size(); ++i) line(rows[i]);

  out << "\nRelations (" << Thresholds(r) << ")\n";
  size_t id_width = 0;
  for (const auto& v : r.verdicts) id_width = std::max(id_width, v.mr_id.size());
  for (const auto& v : r.verdicts) {
    const std::string outcome(mr::OutcomeName(v.outcome));
    out << v.mr_id << std::string(id_width - v.mr_id.size() + 2, ' ') << outcome;
    const std::string groups = GroupSummary(v);
    if (!groups.empty()) out << std::string(14 - std::min<size_t>(outcome.size(), 13), ' ') << groups;
    out << "\n";
    for (const auto& e : v.evidence) out << "    " << EvidenceLine(e) << "\n";
    if (!v.reason.empty()) out << "    " << v.reason << "\n";
  }
  if (!r.anomalies.empty()) {
    out << "\nAnomalies\n";
    for (const auto& a : r.anomalies) out << "  " << a.kind << ": " << a.message << "\n";
  }
  out << "\n" << kTintNote << "\n";
  return out.str();
}

std::string RenderMarkdown(const StudyReport& r) {
  std::ostringstream out;
  out << "# Study report\n\n";
  const auto rows = TableRows(r);
  for (size_t i = 0; i < rows.size(); ++i) {
    out << "|";
    for (const auto& cell : rows[i]) out << " " << cell << " |";
    out << "\n";
    if (i == 0) {
      out << "|";
      for (size_t c = 0; c < rows[0].size(); ++c) out << "---|";
      out << "\n";
    }
  }
  out << "\n## IS by test case\n\n```csv\ntest_case,is_mean,is_std\n";
  for (const auto& name : r.order) {
    if (auto it = r.records.find(name); it != r.records.end()) {
      out << name << "," << FormatFixed(it->second.is_result.mean, 4) << ","
          << FormatFixed(it->second.is_result.std, 4) << "\n";
    }
  }
  out << "```\n\n## Verdicts\n\nThresholds: " << Thresholds(r) << "\n\n";
  for (const auto& v : r.verdicts) {
    out << "- **" << v.mr_id << "**: " << mr::OutcomeName(v.outcome);
    const std::string groups = GroupSummary(v);
    if (!groups.empty()) out << " (" << groups << ")";
    out << "\n";
    for (const auto& e : v.evidence) out << "  - " << EvidenceLine(e) << "\n";
    if (!v.reason.empty()) out << "  - " << v.reason << "\n";
  }
  if (!r.anomalies.empty()) {
    out << "\n## Anomalies\n\n";
    for (const auto& a : r.anomalies) out << "- `" << a.kind << "` " << a.message << "\n";
  }
  out << "\n" << r.derivation.ToMarkdown() << "\n" << kTintNote << "\n";
  return out.str();
}

}  // namespace

std::string RenderReport(const StudyReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::kTable: return RenderTable(r);
    case ReportFormat::kJson: return ReportToJson(r).dump(2) + "\n";
    case ReportFormat::kMarkdown: return RenderMarkdown(r);
  }
  return {};
}

}  // namespace metamorph
