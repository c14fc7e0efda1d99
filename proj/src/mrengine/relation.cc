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

#include "mrengine/relation.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "common/error.h"
#include "common/text.h"

namespace metamorph::mr {

using nlohmann::json;

std::string_view OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kSatisfied: return "Satisfied";
    case Outcome::kViolated: return "Violated";
    case Outcome::kInconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

Outcome ParseOutcome(const std::string& s) {
  if (s == "Satisfied") return Outcome::kSatisfied;
  if (s == "Violated") return Outcome::kViolated;
  if (s == "Inconclusive") return Outcome::kInconclusive;
  Fail(ErrorCode::kInvalidConfig, "unknown outcome '" + s + "'");
}

struct ClauseInfo {
  ClauseKind kind;
  const char* name;
  const char* comparison;
};

constexpr ClauseInfo kClauses[] = {
    {ClauseKind::kIsDropAtMost, "is_drop_at_most", "<="},
    {ClauseKind::kTintNotElevated, "tint_not_elevated", "<="},
    {ClauseKind::kTintElevated, "tint_elevated", ">"},
    {ClauseKind::kDropSimilar, "drop_similar", "<="},
    {ClauseKind::kIsGreater, "is_greater", ">"},
    {ClauseKind::kTintLess, "tint_less", "<"},
    {ClauseKind::kBudgetAtMost, "budget_at_most", "<="},
};

const ClauseInfo& Info(ClauseKind kind) {
  for (const auto& c : kClauses) {
    if (c.kind == kind) return c;
  }
  return kClauses[0];
}

ClauseKind ParseClauseKind(const std::string& name) {
  for (const auto& c : kClauses) {
    if (name == c.name) return c.kind;
  }
  Fail(ErrorCode::kInvalidConfig, "unknown clause kind '" + name + "'");
}

bool UsesBaseline(ClauseKind k) {
  return k == ClauseKind::kIsDropAtMost || k == ClauseKind::kTintNotElevated ||
         k == ClauseKind::kTintElevated || k == ClauseKind::kDropSimilar;
}

bool UsesB(ClauseKind k) {
  return k == ClauseKind::kDropSimilar || k == ClauseKind::kIsGreater || k == ClauseKind::kTintLess;
}

bool HasThreshold(ClauseKind k) {
  return k != ClauseKind::kIsGreater && k != ClauseKind::kTintLess;
}

void CollectCases(const PredicateNode& node, std::set<std::string>& out) {
  if (node.op == PredicateNode::Op::kClause) {
    const Clause& c = node.clause;
    out.insert(c.a);
    if (UsesB(c.kind)) out.insert(c.b);
    if (UsesBaseline(c.kind)) out.insert(c.baseline);
    return;
  }
  for (const auto& child : node.children) CollectCases(child, out);
}

double ResolveThreshold(const Threshold& t, const MRParameters& p) {
  if (t.literal) return *t.literal;
  if (t.parameter == "epsilon_is") return p.epsilon_is;
  if (t.parameter == "tau_tint") return p.tau_tint;
  if (t.parameter == "epsilon_similar") return p.epsilon_similar;
  Fail(ErrorCode::kInvalidConfig, "unknown threshold parameter '" + t.parameter + "'");
}

class Evaluator {
 public:
  Evaluator(const MRSpec& mr, const RecordMap& records, MRVerdict& verdict)
      : mr_(mr), records_(records), verdict_(verdict) {}

  Outcome Run(const PredicateNode& node, const std::string& group) {
    const std::string here = node.label.empty() ? group : node.label;
    Outcome result;
    if (node.op == PredicateNode::Op::kClause) {
      result = RunClause(node.clause, here);
    } else {
      // All: any inconclusive child wins over a violation so missing data is
      // never reported as a pass or a fail. Any: a single pass suffices.
      bool any_inconclusive = false, any_violated = false, any_satisfied = false;
      for (const auto& child : node.children) {
        const Outcome o = Run(child, here);
        any_inconclusive |= o == Outcome::kInconclusive;
        any_violated |= o == Outcome::kViolated;
        any_satisfied |= o == Outcome::kSatisfied;
      }
      if (node.op == PredicateNode::Op::kAll) {
        result = any_inconclusive ? Outcome::kInconclusive
                 : any_violated   ? Outcome::kViolated
                                  : Outcome::kSatisfied;
      } else {
        result = any_satisfied      ? Outcome::kSatisfied
                 : any_inconclusive ? Outcome::kInconclusive
                                    : Outcome::kViolated;
      }
    }
    if (!node.label.empty()) verdict_.groups[node.label] = result;
    return result;
  }

 private:
  const MetricRecord* Get(const std::string& name) {
    auto it = records_.find(name);
    if (it == records_.end()) {
      missing_.insert(name);
      return nullptr;
    }
    return &it->second;
  }

  static double Drop(const MetricRecord& f, const MetricRecord& b) {
    return (b.is_result.mean - f.is_result.mean) / b.is_result.mean;
  }

  Outcome RunClause(const Clause& c, const std::string& group) {
    const MetricRecord* a = Get(c.a);
    const MetricRecord* b = UsesB(c.kind) ? Get(c.b) : nullptr;
    const MetricRecord* base = UsesBaseline(c.kind) ? Get(c.baseline) : nullptr;
    if (!a || (UsesB(c.kind) && !b) || (UsesBaseline(c.kind) && !base)) {
      return Outcome::kInconclusive;
    }
    const double threshold = HasThreshold(c.kind) ? ResolveThreshold(c.threshold, mr_.parameters) : 0.0;
    Evidence ev;
    ev.group = group;
    ev.threshold = threshold;
    ev.comparison = Info(c.kind).comparison;
    switch (c.kind) {
      case ClauseKind::kIsDropAtMost:
        ev.quantity = "relative IS drop " + c.a + " vs " + c.baseline;
        ev.value = Drop(*a, *base);
        ev.passed = ev.value <= threshold;
        break;
      case ClauseKind::kTintNotElevated:
      case ClauseKind::kTintElevated:
        ev.quantity = "tint rise " + c.a + " over " + c.baseline;
        ev.value = a->tint - base->tint;
        ev.passed = c.kind == ClauseKind::kTintElevated ? ev.value > threshold : ev.value <= threshold;
        break;
      case ClauseKind::kDropSimilar:
        ev.quantity = "|drop " + c.a + " - drop " + c.b + "|";
        ev.value = std::fabs(Drop(*a, *base) - Drop(*b, *base));
        ev.passed = ev.value <= threshold;
        break;
      case ClauseKind::kIsGreater:
        ev.quantity = "IS " + c.a + " - IS " + c.b;
        ev.value = a->is_result.mean - b->is_result.mean;
        ev.passed = ev.value > 0.0;
        break;
      case ClauseKind::kTintLess:
        ev.quantity = "tint " + c.a + " - tint " + c.b;
        ev.value = a->tint - b->tint;
        ev.passed = ev.value < 0.0;
        break;
      case ClauseKind::kBudgetAtMost:
        if (!a->occlusion_budget) {
          missing_.insert(c.a + ".occlusion_budget");
          return Outcome::kInconclusive;
        }
        ev.quantity = "occlusion budget " + c.a;
        ev.value = *a->occlusion_budget;
        ev.passed = ev.value <= threshold;
        break;
    }
    verdict_.evidence.push_back(ev);
    return ev.passed ? Outcome::kSatisfied : Outcome::kViolated;
  }

 public:
  std::set<std::string> missing_;

 private:
  const MRSpec& mr_;
  const RecordMap& records_;
  MRVerdict& verdict_;
};

}  // namespace

std::vector<std::string> ReferencedCases(const MRSpec& mr) {
  std::set<std::string> cases;
  CollectCases(mr.predicate, cases);
  return {cases.begin(), cases.end()};
}

MRVerdict Evaluate(const MRSpec& mr, const RecordMap& records) {
  MRVerdict verdict;
  verdict.mr_id = mr.id;
  Evaluator eval(mr, records, verdict);
  verdict.outcome = eval.Run(mr.predicate, "");
  if (!eval.missing_.empty()) {
    std::string reason = "missing:";
    for (const auto& m : eval.missing_) reason += " " + m;
    verdict.reason = reason;
  }
  const auto cases = ReferencedCases(mr);
  for (const auto& flag : DetectAnomalies(records)) {
    const bool relevant = std::any_of(flag.cases.begin(), flag.cases.end(), [&](const std::string& c) {
      return std::binary_search(cases.begin(), cases.end(), c);
    });
    if (relevant) verdict.anomalies.push_back(flag.message);
  }
  return verdict;
}

std::vector<MRSpec> WithParameters(std::vector<MRSpec> mrs, const MRParameters& params) {
  for (auto& m : mrs) m.parameters = params;
  return mrs;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json MeanStdToJson(const std::optional<MeanStd>& m) {
  if (!m) return nullptr;
  return {{"mean", m->mean}, {"std", m->std}, {"n", m->n}};
}

std::optional<MeanStd> MeanStdFromJson(const json& j) {
  if (j.is_null()) return std::nullopt;
  return MeanStd{j.at("mean").get<double>(), j.at("std").get<double>(), j.value("n", size_t{0})};
}

template <typename T>
json OptionalToJson(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> OptionalDouble(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json NodeToJson(const PredicateNode& node) {
  json j;
  if (node.op == PredicateNode::Op::kClause) {
    const Clause& c = node.clause;
    json cj{{"kind", Info(c.kind).name}, {"a", c.a}};
    if (UsesB(c.kind)) cj["b"] = c.b;
    if (UsesBaseline(c.kind)) cj["baseline"] = c.baseline;
    if (HasThreshold(c.kind)) {
      cj["threshold"] = c.threshold.literal ? json(*c.threshold.literal) : json(c.threshold.parameter);
    }
    j["clause"] = cj;
  } else {
    json kids = json::array();
    for (const auto& child : node.children) kids.push_back(NodeToJson(child));
    j[node.op == PredicateNode::Op::kAll ? "all" : "any"] = kids;
  }
  if (!node.label.empty()) j["label"] = node.label;
  return j;
}

PredicateNode NodeFromJson(const json& j) {
  PredicateNode node;
  node.label = j.value("label", std::string());
  if (j.contains("clause")) {
    const json& cj = j.at("clause");
    node.op = PredicateNode::Op::kClause;
    Clause& c = node.clause;
    c.kind = ParseClauseKind(cj.at("kind").get<std::string>());
    c.a = cj.at("a").get<std::string>();
    if (UsesB(c.kind)) c.b = cj.at("b").get<std::string>();
    if (UsesBaseline(c.kind)) c.baseline = cj.value("baseline", std::string("baseline"));
    if (HasThreshold(c.kind)) {
      const json& t = cj.at("threshold");
      if (t.is_number()) {
        c.threshold.literal = t.get<double>();
      } else {
        c.threshold.parameter = t.get<std::string>();
      }
    }
    return node;
  }
  const bool all = j.contains("all");
  if (!all && !j.contains("any")) Fail(ErrorCode::kInvalidConfig, "predicate node needs all/any/clause");
  node.op = all ? PredicateNode::Op::kAll : PredicateNode::Op::kAny;
  for (const auto& child : j.at(all ? "all" : "any")) node.children.push_back(NodeFromJson(child));
  return node;
}

}  // namespace

json RecordToJson(const MetricRecord& r) {
  return json{
      {"test_case", r.test_case},
      {"is", {{"mean", r.is_result.mean}, {"std", r.is_result.std}, {"n_splits", r.is_result.n_splits}}},
      {"tint", r.tint},
      {"likert_semantic", MeanStdToJson(r.likert_semantic)},
      {"likert_realistic", MeanStdToJson(r.likert_realistic)},
      {"n_generated", r.n_generated},
      {"proportion", OptionalToJson(r.proportion)},
      {"occlusion_budget", OptionalToJson(r.occlusion_budget)},
      {"object_class", r.object_class},
      {"object_kind", r.object_kind},
  };
}

MetricRecord RecordFromJson(const std::string& name, const json& j) {
  try {
    MetricRecord r;
    r.test_case = j.value("test_case", name);
    const json& is = j.at("is");
    r.is_result.mean = is.at("mean").get<double>();
    r.is_result.std = is.value("std", 0.0);
    r.is_result.n_splits = is.value("n_splits", size_t{1});
    r.tint = j.at("tint").get<double>();
    if (j.contains("likert_semantic")) r.likert_semantic = MeanStdFromJson(j.at("likert_semantic"));
    if (j.contains("likert_realistic")) r.likert_realistic = MeanStdFromJson(j.at("likert_realistic"));
    r.n_generated = j.value("n_generated", size_t{0});
    r.proportion = OptionalDouble(j, "proportion");
    r.occlusion_budget = OptionalDouble(j, "occlusion_budget");
    r.object_class = j.value("object_class", std::string());
    r.object_kind = j.value("object_kind", std::string());
    if (!(r.tint >= 0.0 && r.tint <= 1.0)) Fail(ErrorCode::kInvalidConfig, name + ": tint outside [0,1]");
    if (!(r.is_result.mean > 0.0)) Fail(ErrorCode::kInvalidConfig, name + ": IS mean must be positive");
    return r;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, "record " + name + ": " + e.what());
  }
}

json RecordsToJson(const RecordMap& records) {
  json j = json::object();
  for (const auto& [name, r] : records) j[name] = RecordToJson(r);
  return j;
}

RecordMap RecordsFromJson(const json& j) {
  if (!j.is_object()) Fail(ErrorCode::kInvalidConfig, "records must be an object keyed by test case");
  RecordMap out;
  for (const auto& [name, value] : j.items()) {
    // Pipeline reports carry failed cases as {"status": "inconclusive"}.
    if (value.contains("status")) continue;
    out.emplace(name, RecordFromJson(name, value));
  }
  return out;
}

json SpecToJson(const MRSpec& mr) {
  return json{
      {"id", mr.id},
      {"description", mr.description},
      {"predicate", NodeToJson(mr.predicate)},
      {"parameters",
       {{"epsilon_is", mr.parameters.epsilon_is},
        {"tau_tint", mr.parameters.tau_tint},
        {"epsilon_similar", mr.parameters.epsilon_similar}}},
      {"derived_from", mr.derived_from},
  };
}

MRSpec SpecFromJson(const json& j) {
  try {
    MRSpec mr;
    mr.id = j.at("id").get<std::string>();
    mr.description = j.value("description", std::string());
    mr.predicate = NodeFromJson(j.at("predicate"));
    if (j.contains("parameters")) {
      const json& p = j.at("parameters");
      mr.parameters.epsilon_is = p.value("epsilon_is", kDefaultEpsilonIs);
      mr.parameters.tau_tint = p.value("tau_tint", kDefaultTauTint);
      mr.parameters.epsilon_similar = p.value("epsilon_similar", kDefaultEpsilonSimilar);
    }
    mr.derived_from = j.value("derived_from", std::vector<std::string>{});
    return mr;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("MR spec: ") + e.what());
  }
}

json VerdictToJson(const MRVerdict& v) {
  json evidence = json::array();
  for (const auto& e : v.evidence) {
    evidence.push_back({{"group", e.group},
                        {"quantity", e.quantity},
                        {"value", e.value},
                        {"threshold", e.threshold},
                        {"comparison", e.comparison},
                        {"passed", e.passed}});
  }
  json groups = json::object();
  for (const auto& [label, o] : v.groups) groups[label] = OutcomeName(o);
  json j{{"mr_id", v.mr_id},
         {"outcome", OutcomeName(v.outcome)},
         {"groups", groups},
         {"evidence", evidence},
         {"anomalies", v.anomalies}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

MRVerdict VerdictFromJson(const json& j) {
  MRVerdict v;
  v.mr_id = j.at("mr_id").get<std::string>();
  v.outcome = ParseOutcome(j.at("outcome").get<std::string>());
  for (const auto& [label, o] : j.at("groups").items()) v.groups[label] = ParseOutcome(o.get<std::string>());
  for (const auto& e : j.at("evidence")) {
    v.evidence.push_back({e.at("group").get<std::string>(), e.at("quantity").get<std::string>(),
                          e.at("value").get<double>(), e.at("threshold").get<double>(),
                          e.at("comparison").get<std::string>(), e.at("passed").get<bool>()});
  }
  v.anomalies = j.at("anomalies").get<std::vector<std::string>>();
  v.reason = j.value("reason", std::string());
  return v;
}

json AnomalyToJson(const AnomalyFlag& a) {
  return {{"kind", a.kind}, {"cases", a.cases}, {"message", a.message}};
}

AnomalyFlag AnomalyFromJson(const json& j) {
  return {j.at("kind").get<std::string>(), j.at("cases").get<std::vector<std::string>>(),
          j.at("message").get<std::string>()};
}

}  // namespace metamorph::mr
