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

#include "mrengine/derivation_log.h"

#include <algorithm>

#include "common/error.h"

namespace metamorph::mr {

using nlohmann::json;

bool DerivationLog::Contains(const std::string& id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.mr_id == id; });
}

void DerivationLog::Append(const MRSpec& mr, const std::vector<MRVerdict>& motivating_verdicts) {
  if (Contains(mr.id)) Fail(ErrorCode::kDuplicateMR, mr.id);
  for (const auto& parent : mr.derived_from) {
    if (!Contains(parent)) Fail(ErrorCode::kUnknownParentMR, mr.id + " derives from unlogged " + parent);
  }
  Entry e{mr.id, mr.description, mr.derived_from, {}};
  for (const auto& v : motivating_verdicts) e.motivating.emplace_back(v.mr_id, v.outcome);
  entries_.push_back(std::move(e));
}

json DerivationLog::ToJson() const {
  json out = json::array();
  for (const auto& e : entries_) {
    json motivating = json::array();
    for (const auto& [id, o] : e.motivating) motivating.push_back({{"mr_id", id}, {"outcome", OutcomeName(o)}});
    out.push_back({{"mr_id", e.mr_id},
                   {"description", e.description},
                   {"derived_from", e.derived_from},
                   {"motivating", motivating}});
  }
  return out;
}

DerivationLog DerivationLog::FromJson(const json& j) {
  DerivationLog log;
  for (const auto& item : j) {
    MRSpec mr;
    mr.id = item.at("mr_id").get<std::string>();
    mr.description = item.value("description", std::string());
    mr.derived_from = item.at("derived_from").get<std::vector<std::string>>();
    std::vector<MRVerdict> motivating;
    for (const auto& m : item.at("motivating")) {
      MRVerdict v;
      v.mr_id = m.at("mr_id").get<std::string>();
      const std::string o = m.at("outcome").get<std::string>();
      v.outcome = o == "Satisfied" ? Outcome::kSatisfied : o == "Violated" ? Outcome::kViolated : Outcome::kInconclusive;
      motivating.push_back(std::move(v));
    }
    log.Append(mr, motivating);
  }
  return log;
}

std::string DerivationLog::ToMarkdown() const {
  std::string out = "## Relation derivation\n\n";
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    out += std::to_string(i + 1) + ". **" + e.mr_id + "**";
    if (e.derived_from.empty()) {
      out += " (root)";
    } else {
      out += " derived from ";
      for (size_t k = 0; k < e.derived_from.size(); ++k) out += (k ? ", " : "") + e.derived_from[k];
    }
    if (!e.motivating.empty()) {
      out += "; prompted by";
      for (const auto& [id, o] : e.motivating) out += " " + id + "=" + std::string(OutcomeName(o));
    }
    out += "\n";
    if (!e.description.empty()) out += "   " + e.description + "\n";
  }
  return out;
}

}  // namespace metamorph::mr
