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

#include <algorithm>
#include <cmath>

#include "common/text.h"
#include "mrengine/relation.h"

namespace metamorph::mr {

namespace {

std::string Percent(double p) { return std::to_string(RoundHalfAway(p * 100.0)) + "%"; }
std::string Is(double v) { return FormatFixed(v, 2); }

struct Margin {
  std::string object_class;
  std::string partial;
  std::string full;
  double value;
};

}  // namespace

std::vector<AnomalyFlag> DetectAnomalies(const RecordMap& records) {
  std::vector<AnomalyFlag> flags;

  // A more heavily modified case outscoring a lighter one of the same object.
  for (const auto& [full_name, full] : records) {
    for (const auto& [part_name, part] : records) {
      if (!full.proportion || !part.proportion || full.object_class.empty()) continue;
      if (full.object_class != part.object_class || !(*full.proportion > *part.proportion)) continue;
      if (full.is_result.mean > part.is_result.mean) {
        flags.push_back({"proportion-inversion",
                         {full_name, part_name},
                         Percent(*full.proportion) + "-modified outscores " + Percent(*part.proportion) +
                             "-modified: " + full_name + " IS " + Is(full.is_result.mean) + " > " + part_name +
                             " IS " + Is(part.is_result.mean)});
      }
    }
  }

  // Higher IS should come with less tint, among cases built from the same
  // kind of object.
  for (auto i = records.begin(); i != records.end(); ++i) {
    for (auto j = std::next(i); j != records.end(); ++j) {
      if (i->second.object_kind.empty() || i->second.object_kind != j->second.object_kind ||
          i->second.object_class != j->second.object_class) {
        continue;
      }
      const double dis = i->second.is_result.mean - j->second.is_result.mean;
      const double dtint = i->second.tint - j->second.tint;
      if (dis * dtint > 0.0) {
        const auto& hi = dis > 0 ? *i : *j;
        const auto& lo = dis > 0 ? *j : *i;
        flags.push_back({"is-tint-disagreement",
                         {hi.first, lo.first},
                         "IS and tint orderings disagree: " + hi.first + " has higher IS (" +
                             Is(hi.second.is_result.mean) + " vs " + Is(lo.second.is_result.mean) +
                             ") and more tint (" + FormatFixed(hi.second.tint, 3) + " vs " +
                             FormatFixed(lo.second.tint, 3) + ") than " + lo.first});
      }
    }
  }

  // Partial-vs-full IS margin per object class, pairing cases that differ only
  // in proportion.
  std::vector<Margin> margins;
  for (const auto& [full_name, full] : records) {
    for (const auto& [part_name, part] : records) {
      if (!full.proportion || !part.proportion || full.object_kind.empty()) continue;
      if (full.object_kind != part.object_kind || full.object_class != part.object_class) continue;
      if (full.occlusion_budget != part.occlusion_budget || !(*full.proportion > *part.proportion)) continue;
      margins.push_back({full.object_class, part_name, full_name, part.is_result.mean - full.is_result.mean});
    }
  }
  for (const auto& small : margins) {
    for (const auto& large : margins) {
      if (small.object_class == large.object_class || !(large.value > 0.0)) continue;
      if (small.value < kMarginRatio * large.value) {
        flags.push_back({"proportion-margin",
                         {small.partial, small.full, large.partial, large.full},
                         "partial-modification gain for " + small.object_class + " (" + small.partial + " vs " +
                             small.full + ": " + Is(small.value) + ") is small next to " + large.object_class +
                             " (" + large.partial + " vs " + large.full + ": " + Is(large.value) + ")"});
      }
    }
  }
  return flags;
}

}  // namespace metamorph::mr
