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

#ifndef METAMORPH_PIPELINE_PIPELINE_H_
#define METAMORPH_PIPELINE_PIPELINE_H_

#include <functional>
#include <string>

#include "pipeline/config.h"
#include "pipeline/report.h"

namespace metamorph {

using ProgressFn = std::function<void(const std::string& message)>;

// Baseline plus every configured case: mutate, generate, classify, measure.
// A failing case becomes a CaseFailure and the study goes on. Artifacts land
// under <output_root>/<case>/ and the report at <output_root>/report.json.
StudyReport RunPipeline(const RunConfig& cfg, const ProgressFn& progress = {});

// Relations to evaluate for `cfg`: builtin ones whose cases are all
// configured, MR01 aimed at each custom case, then cfg.extra_mrs.
std::vector<mr::MRSpec> RelationsFor(const RunConfig& cfg);

// Evaluates `mrs` over the records and fills verdicts, anomalies and the
// derivation log.
void EvaluateRelations(StudyReport& report, const std::vector<mr::MRSpec>& mrs);

}  // namespace metamorph

#endif  // METAMORPH_PIPELINE_PIPELINE_H_
