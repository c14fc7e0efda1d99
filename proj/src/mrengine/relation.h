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

#ifndef METAMORPH_MRENGINE_RELATION_H_
#define METAMORPH_MRENGINE_RELATION_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metrics/inception_score.h"

namespace metamorph::mr {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
  size_t n = 0;

  friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

// Everything measured for one test case (or the baseline). The descriptor
// fields (proportion, budget, object) come from the test-case recipe and are
// what anomaly detection and budget clauses look at.
struct MetricRecord {
  std::string test_case;
  ISResult is_result;
  double tint = 0.0;
  std::optional<MeanStd> likert_semantic;
  std::optional<MeanStd> likert_realistic;
  size_t n_generated = 0;
  std::optional<double> proportion;
  std::optional<double> occlusion_budget;
  std::string object_class;  // "bird", "tree", empty for the baseline
  std::string object_kind;   // BirdSet / TreeSet / SingleSprite

  friend bool operator==(const MetricRecord&, const MetricRecord&) = default;
};

using RecordMap = std::map<std::string, MetricRecord>;

enum class ClauseKind {
  kIsDropAtMost,     // (IS_base - IS_a) / IS_base <= t
  kTintNotElevated,  // tint_a - tint_base <= t
  kTintElevated,     // tint_a - tint_base > t
  kDropSimilar,      // |drop_a - drop_b| <= t
  kIsGreater,        // IS_a - IS_b > 0
  kTintLess,         // tint_a - tint_b < 0
  kBudgetAtMost,     // occlusion_budget_a <= t
};

// Either a literal or the name of an MRParameters field.
struct Threshold {
  std::optional<double> literal;
  std::string parameter;
};

struct Clause {
  ClauseKind kind = ClauseKind::kIsDropAtMost;
  std::string a;
  std::string b;
  std::string baseline;
  Threshold threshold;
};

struct PredicateNode {
  enum class Op { kAll, kAny, kClause };
  Op op = Op::kAll;
  std::string label;  // labelled nodes get their own outcome in the verdict
  std::vector<PredicateNode> children;
  Clause clause;
};

inline constexpr double kDefaultEpsilonIs = 0.10;
inline constexpr double kDefaultTauTint = 0.10;
inline constexpr double kDefaultEpsilonSimilar = 0.05;

struct MRParameters {
  double epsilon_is = kDefaultEpsilonIs;        // tolerated relative IS drop
  double tau_tint = kDefaultTauTint;            // tolerated tint rise over baseline
  double epsilon_similar = kDefaultEpsilonSimilar;  // tolerated gap between two relative drops

  friend bool operator==(const MRParameters&, const MRParameters&) = default;
};

struct MRSpec {
  std::string id;
  std::string description;
  PredicateNode predicate;
  MRParameters parameters;
  std::vector<std::string> derived_from;
};

enum class Outcome { kSatisfied, kViolated, kInconclusive };
std::string_view OutcomeName(Outcome o);

struct Evidence {
  std::string group;
  std::string quantity;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<=", ">", "<"
  bool passed = false;
};

struct AnomalyFlag {
  std::string kind;
  std::vector<std::string> cases;
  std::string message;
};

struct MRVerdict {
  std::string mr_id;
  Outcome outcome = Outcome::kInconclusive;
  std::map<std::string, Outcome> groups;
  std::vector<Evidence> evidence;
  std::vector<std::string> anomalies;
  std::string reason;  // why the verdict is Inconclusive, if it is
};

// Test cases the predicate refers to, sorted and unique.
std::vector<std::string> ReferencedCases(const MRSpec& mr);

// Pure function of its inputs. Missing records make the verdict (and every
// labelled group that touches them) Inconclusive. Anomaly flags involving
// a referenced case are attached.
MRVerdict Evaluate(const MRSpec& mr, const RecordMap& records);

// Applies `params` to every MR in `mrs`.
std::vector<MRSpec> WithParameters(std::vector<MRSpec> mrs, const MRParameters& params);

// Serialisation.
nlohmann::json RecordToJson(const MetricRecord& r);
MetricRecord RecordFromJson(const std::string& name, const nlohmann::json& j);
nlohmann::json RecordsToJson(const RecordMap& records);
RecordMap RecordsFromJson(const nlohmann::json& j);

nlohmann::json SpecToJson(const MRSpec& mr);
MRSpec SpecFromJson(const nlohmann::json& j);

nlohmann::json VerdictToJson(const MRVerdict& v);
MRVerdict VerdictFromJson(const nlohmann::json& j);

nlohmann::json AnomalyToJson(const AnomalyFlag& a);
AnomalyFlag AnomalyFromJson(const nlohmann::json& j);

// builtin.cc
std::vector<MRSpec> BuiltinMRs();

// MR01 aimed at an arbitrary follow-up case; id "MR01:<follow_up>".
MRSpec Mr01For(const std::string& follow_up, const std::string& baseline = "baseline");

// anomalies.cc
inline constexpr double kMarginRatio = 0.5;
std::vector<AnomalyFlag> DetectAnomalies(const RecordMap& records);

}  // namespace metamorph::mr

#endif  // METAMORPH_MRENGINE_RELATION_H_
