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

#ifndef METAMORPH_PIPELINE_REPLAY_H_
#define METAMORPH_PIPELINE_REPLAY_H_

#include "json.hpp"
#include "mrengine/relation.h"
#include "pipeline/report.h"

namespace metamorph {

// Bundled reference study: IS and Likert per case, with visual tint
// observations encoded as numbers.
nlohmann::json ReferenceStudyFixture();

// Evaluates the builtin relations on the reference study.
StudyReport ReplayReferenceStudy(const mr::MRParameters& params = {});

}  // namespace metamorph

#endif  // METAMORPH_PIPELINE_REPLAY_H_
