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

#ifndef METAMORPH_MRENGINE_DERIVATION_LOG_H_
#define METAMORPH_MRENGINE_DERIVATION_LOG_H_

#include <string>
#include <vector>

#include "json.hpp"
#include "mrengine/relation.h"

namespace metamorph::mr {

// Append-only record of how each relation was motivated by earlier verdicts.
// Parents must already be logged, which keeps the graph acyclic.
class DerivationLog {
 public:
  struct Entry {
    std::string mr_id;
    std::string description;
    std::vector<std::string> derived_from;
    std::vector<std::pair<std::string, Outcome>> motivating;  // (mr id, outcome)
  };

  // Throws UnknownParentMR, DuplicateMR.
  void Append(const MRSpec& mr, const std::vector<MRVerdict>& motivating_verdicts);

  const std::vector<Entry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool Contains(const std::string& id) const;

  nlohmann::json ToJson() const;
  static DerivationLog FromJson(const nlohmann::json& j);
  std::string ToMarkdown() const;

 private:
  std::vector<Entry> entries_;
};

}  // namespace metamorph::mr

#endif  // METAMORPH_MRENGINE_DERIVATION_LOG_H_
