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

#include "pipeline/replay.h"

#include "mrengine/derivation_log.h"
#include "pipeline/pipeline.h"

namespace metamorph {

using nlohmann::json;

namespace {

// Grey tint was judged by eye, not measured. Encoding: 0.30 for no visible
// tint, 0.45 faint, 0.50 moderate, 0.55 strong.
constexpr double kNoTint = 0.30;
constexpr double kFaintTint = 0.45;
constexpr double kModerateTint = 0.50;
constexpr double kStrongTint = 0.55;

// Likert values were pooled over the 40 rated images.
constexpr size_t kLikertImages = 40;

json Likert(double mean, double std) { return {{"mean", mean}, {"std", std}, {"n", kLikertImages}}; }

json Row(double is, double is_std, double tint, json semantic, json realistic, json proportion, json budget,
         const char* object_class, const char* object_kind) {
  return {{"is", {{"mean", is}, {"std", is_std}, {"n_splits", 10}}},
          {"tint", tint},
          {"likert_semantic", std::move(semantic)},
          {"likert_realistic", std::move(realistic)},
          {"n_generated", 0},
          {"proportion", std::move(proportion)},
          {"occlusion_budget", std::move(budget)},
          {"object_class", object_class},
          {"object_kind", object_kind}};
}

}  // namespace

json ReferenceStudyFixture() {
  json records = {
      {"baseline", Row(4.16, 0.03, kNoTint, Likert(2.37, 0.88), Likert(2.59, 1.11), nullptr, nullptr, "", "")},
      {"TC01", Row(3.50, 0.04, kStrongTint, Likert(1.60, 0.85), Likert(1.73, 1.00), 1.0, 0.05, "bird", "BirdSet")},
      {"TC02", Row(3.84, 0.04, kModerateTint, Likert(1.48, 0.62), Likert(1.76, 0.99), 1.0, 0.05, "tree", "TreeSet")},
      {"TC03", Row(3.99, 0.05, kFaintTint, Likert(1.75, 0.88), Likert(1.84, 1.10), 0.3, 0.05, "bird", "BirdSet")},
      {"TC04", Row(3.96, 0.06, kFaintTint, Likert(1.18, 0.38), Likert(1.15, 0.42), 0.3, 0.05, "tree", "TreeSet")},
      {"TC05",
       Row(3.92, 0.04, kStrongTint, Likert(1.98, 0.80), Likert(2.25, 1.01), 1.0, 0.05, "bird", "SingleSprite")},
      {"TC06",
       Row(4.06, 0.02, kStrongTint, Likert(1.89, 0.97), Likert(1.90, 0.98), 1.0, 0.05, "bird", "SingleSprite")},
      {"TC07",
       Row(3.88, 0.05, kStrongTint, Likert(1.91, 0.91), Likert(1.77, 1.07), 1.0, 0.05, "bird", "SingleSprite")},
      {"TC08", Row(3.83, 0.03, kNoTint, Likert(1.68, 0.70), Likert(1.68, 0.92), 1.0, 0.0, "bird", "BirdSet")},
  };
  return {{"order", {"baseline", "TC01", "TC02", "TC03", "TC04", "TC05", "TC06", "TC07", "TC08"}},
          {"records", records}};
}

StudyReport ReplayReferenceStudy(const mr::MRParameters& params) {
  const json fixture = ReferenceStudyFixture();
  StudyReport report;
  report.order = fixture.at("order").get<std::vector<std::string>>();
  report.records = mr::RecordsFromJson(fixture.at("records"));
  report.environment = {{"source", "replay"},
                        {"thresholds",
                         {{"epsilon_is", params.epsilon_is},
                          {"tau_tint", params.tau_tint},
                          {"epsilon_similar", params.epsilon_similar}}}};
  EvaluateRelations(report, mr::WithParameters(mr::BuiltinMRs(), params));
  return report;
}

}  // namespace metamorph
