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

#include "pipeline/pipeline.h"

#include <algorithm>
#include <optional>
#include <set>

#include "common/error.h"
#include "common/parallel.h"
#include "common/summation.h"
#include "common/text.h"
#include "dataset/dataset.h"
#include "image/codec.h"
#include "likert/store.h"
#include "metrics/classifier.h"
#include "metrics/inception_score.h"
#include "metrics/tint.h"
#include "modelio/mock_model.h"
#include "modelio/run_model.h"
#include "mrengine/relation.h"
#include "mutate/apply.h"

namespace metamorph {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Proportion 0: every image copied unchanged.
TestCaseSpec BaselineSpec(const RunConfig& cfg) {
  TestCaseSpec spec = Preset("TC01");
  spec.name = kBaselineName;
  spec.proportion = 0.0;
  spec.seed = cfg.seed;
  return spec;
}

std::string ScoresPathFor(const std::string& tmpl, const std::string& name) {
  std::string out = tmpl;
  const std::string key = "{test_case}";
  for (size_t pos; (pos = out.find(key)) != std::string::npos;) out.replace(pos, key.size(), name);
  return out;
}

double MeanTint(const std::vector<NamedImage>& images, unsigned workers) {
  if (images.empty()) Fail(ErrorCode::kNoOutputImages, "no generated images to measure");
  std::vector<double> tint(images.size());
  ParallelFor(images.size(), workers, [&](size_t i) { tint[i] = GreyTintScore(images[i].pixels); });
  CompensatedSum sum;
  for (double t : tint) sum.Add(t);
  return sum.value() / static_cast<double>(images.size());
}

std::vector<NamedImage> LoadGenerated(const std::vector<std::pair<std::string, fs::path>>& files, unsigned workers) {
  std::vector<NamedImage> images(files.size());
  ParallelFor(files.size(), workers, [&](size_t i) { images[i] = {files[i].first, ReadRgb(files[i].second)}; });
  return images;
}

struct CaseResult {
  mr::MetricRecord record;
  json artifacts;
};

CaseResult RunCase(const RunConfig& cfg, const AnnotatedDataset& ds, const TestCaseSpec& spec, bool is_baseline,
                   const likert::Store* likert, const ProgressFn& progress) {
  const fs::path case_dir = cfg.output_root / spec.name;
  const fs::path mutated = case_dir / "mutated";
  const fs::path generated = case_dir / "generated";
  const fs::path scores_path = case_dir / "scores.txt";
  fs::remove_all(case_dir);
  fs::create_directories(case_dir);
  auto note = [&](const std::string& m) {
    if (progress) progress(spec.name + ": " + m);
  };

  note("mutating");
  const MutationManifest manifest = ApplyTestCase(ds, spec, mutated, {cfg.workers});

  json artifacts = {{"mutated", spec.name + "/mutated"},
                    {"manifest", spec.name + "/mutated/" + kManifestFile},
                    {"generated", spec.name + "/generated"},
                    {"scores", spec.name + "/scores.txt"},
                    {"selected", manifest.selected.size()},
                    {"placed", manifest.placements.size()},
                    {"skipped", manifest.skips.size()}};

  note("generating");
  std::vector<NamedImage> images;
  if (cfg.model.kind == ModelSpec::Kind::kMock) {
    MockGenerate(manifest, cfg.model.mock, generated);
    images = LoadImageDirectory(generated);
  } else {
    const GenerationResult gen = RunModel(cfg.model.command, mutated, generated);
    WriteFile(case_dir / "model.log", gen.model_log);
    artifacts["model_log"] = spec.name + "/model.log";
    images = LoadGenerated(gen.images, cfg.workers);
  }

  note("scoring");
  ScoreSet scores;
  if (cfg.classifier.builtin) {
    scores = BuiltinClassifier(images, cfg.n_classes, cfg.seed);
  } else {
    scores = LoadScores(ScoresPathFor(cfg.classifier.scores_template, spec.name));
  }
  WriteScores(scores_path, scores);

  mr::MetricRecord rec;
  rec.test_case = spec.name;
  rec.is_result = InceptionScore(scores, cfg.n_splits);
  rec.tint = MeanTint(images, cfg.workers);
  rec.n_generated = images.size();
  if (!is_baseline) {
    rec.proportion = spec.proportion;
    rec.occlusion_budget = spec.occlusion_budget;
    rec.object_class = spec.object_class;
    rec.object_kind = std::string(ObjectKindName(spec.object_kind));
  }
  if (likert) {
    const likert::Aggregate agg = likert->SummarizeTestCase(spec.name);
    auto take = [&](const char* scale) -> std::optional<mr::MeanStd> {
      auto it = agg.find(scale);
      if (it == agg.end() || it->second.n == 0) return std::nullopt;
      return mr::MeanStd{it->second.mean, it->second.std, it->second.n};
    };
    rec.likert_semantic = take("semantic");
    rec.likert_realistic = take("realistic");
  }
  return {std::move(rec), std::move(artifacts)};
}

}  // namespace

std::vector<mr::MRSpec> RelationsFor(const RunConfig& cfg) {
  std::set<std::string> configured = {kBaselineName};
  for (const auto& tc : cfg.test_cases) configured.insert(tc.name);
  std::vector<mr::MRSpec> out;
  for (auto& m : mr::WithParameters(mr::BuiltinMRs(), cfg.thresholds)) {
    const auto cases = mr::ReferencedCases(m);
    if (std::all_of(cases.begin(), cases.end(), [&](const std::string& c) { return configured.count(c) > 0; })) {
      out.push_back(std::move(m));
    }
  }
  for (const auto& tc : cfg.test_cases) {
    if (IsPresetName(tc.name)) continue;
    mr::MRSpec m = mr::Mr01For(tc.name, kBaselineName);
    m.parameters = cfg.thresholds;
    out.push_back(std::move(m));
  }
  for (const auto& m : cfg.extra_mrs) out.push_back(m);
  std::set<std::string> ids;
  for (const auto& m : out) {
    if (!ids.insert(m.id).second) Fail(ErrorCode::kInvalidConfig, "duplicate relation id " + m.id);
  }
  return out;
}

void EvaluateRelations(StudyReport& report, const std::vector<mr::MRSpec>& mrs) {
  report.verdicts.clear();
  report.anomalies = mr::DetectAnomalies(report.records);
  report.derivation = {};
  for (const auto& m : mrs) report.verdicts.push_back(mr::Evaluate(m, report.records));
  // A relation joins the derivation chain once all of its parents have.
  for (size_t i = 0; i < mrs.size(); ++i) {
    const auto& m = mrs[i];
    if (!std::all_of(m.derived_from.begin(), m.derived_from.end(),
                     [&](const std::string& p) { return report.derivation.Contains(p); })) {
      continue;
    }
    std::vector<mr::MRVerdict> parents;
    for (const auto& v : report.verdicts) {
      if (std::find(m.derived_from.begin(), m.derived_from.end(), v.mr_id) != m.derived_from.end()) {
        parents.push_back(v);
      }
    }
    report.derivation.Append(m, parents);
  }
}

StudyReport RunPipeline(const RunConfig& cfg, const ProgressFn& progress) {
  ValidateRunConfig(cfg);
  const std::vector<mr::MRSpec> mrs = RelationsFor(cfg);
  const AnnotatedDataset ds = LoadDataset(cfg.dataset_root);
  std::error_code ec;
  fs::create_directories(cfg.output_root, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + cfg.output_root.string());

  std::optional<likert::Store> likert;
  if (!cfg.likert_sessions.empty() && fs::is_directory(cfg.likert_sessions)) likert.emplace(cfg.likert_sessions);

  StudyReport report;
  report.environment = RunSettingsToJson(cfg);
  report.environment["tool_version"] = ToolVersion();

  std::vector<TestCaseSpec> cases = {BaselineSpec(cfg)};
  cases.insert(cases.end(), cfg.test_cases.begin(), cfg.test_cases.end());
  for (size_t i = 0; i < cases.size(); ++i) {
    const TestCaseSpec& spec = cases[i];
    report.order.push_back(spec.name);
    try {
      CaseResult result = RunCase(cfg, ds, spec, i == 0, likert ? &*likert : nullptr, progress);
      report.records.emplace(spec.name, std::move(result.record));
      report.artifacts[spec.name] = std::move(result.artifacts);
    } catch (const Error& e) {
      report.failures[spec.name] = {std::string(ErrorCodeName(e.code())), e.what()};
      if (progress) progress(spec.name + ": inconclusive: " + e.what());
    } catch (const std::exception& e) {
      report.failures[spec.name] = {"Internal", e.what()};
      if (progress) progress(spec.name + ": inconclusive: " + e.what());
    }
  }

  EvaluateRelations(report, mrs);
  WriteFileAtomic(cfg.output_root / kReportFile, RenderReport(report, ReportFormat::kJson));
  return report;
}

}  // namespace metamorph
