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

namespace metamorph::mr {

namespace {

PredicateNode Leaf(ClauseKind kind, std::string a, std::string b = {}, std::string threshold = {},
                   std::optional<double> literal = std::nullopt, std::string baseline = "baseline") {
  PredicateNode n;
  n.op = PredicateNode::Op::kClause;
  n.clause.kind = kind;
  n.clause.a = std::move(a);
  n.clause.b = std::move(b);
  n.clause.baseline = std::move(baseline);
  n.clause.threshold.parameter = std::move(threshold);
  n.clause.threshold.literal = literal;
  return n;
}

PredicateNode All(std::string label, std::vector<PredicateNode> children) {
  PredicateNode n;
  n.op = PredicateNode::Op::kAll;
  n.label = std::move(label);
  n.children = std::move(children);
  return n;
}

PredicateNode Labelled(std::string label, PredicateNode node) {
  node.label = std::move(label);
  return node;
}

PredicateNode IsDrop(const std::string& tc, const std::string& baseline = "baseline") {
  return Leaf(ClauseKind::kIsDropAtMost, tc, {}, "epsilon_is", std::nullopt, baseline);
}
PredicateNode TintFlat(const std::string& tc, const std::string& baseline = "baseline") {
  return Leaf(ClauseKind::kTintNotElevated, tc, {}, "tau_tint", std::nullopt, baseline);
}
PredicateNode TintUp(const std::string& tc) { return Leaf(ClauseKind::kTintElevated, tc, {}, "tau_tint"); }
PredicateNode DropSimilar(const std::string& a, const std::string& b) {
  return Leaf(ClauseKind::kDropSimilar, a, b, "epsilon_similar");
}

// Partial modification must beat full modification on IS and show less tint.
PredicateNode PartialBeatsFull(const std::string& label, const std::string& partial, const std::string& full) {
  return All(label, {Leaf(ClauseKind::kIsGreater, partial, full), Leaf(ClauseKind::kTintLess, partial, full)});
}

}  // namespace

MRSpec Mr01For(const std::string& follow_up, const std::string& baseline) {
  MRSpec mr;
  mr.id = follow_up == "TC01" && baseline == "baseline" ? "MR01" : "MR01:" + follow_up;
  mr.description =
      "A small object inserted into every training image with little overlap of the focal object "
      "keeps IS within epsilon_is of the baseline and adds no grey tint.";
  mr.predicate = All("", {Labelled("is", IsDrop(follow_up, baseline)), Labelled("tint", TintFlat(follow_up, baseline))});
  return mr;
}

std::vector<MRSpec> BuiltinMRs() {
  std::vector<MRSpec> out;
  out.push_back(Mr01For("TC01"));

  MRSpec mr02;
  mr02.id = "MR02";
  mr02.description =
      "Bird and tree insertions into every image both raise grey tint and lower IS by a similar "
      "relative amount, whatever the object type.";
  mr02.predicate = All("", {All("tint", {TintUp("TC01"), TintUp("TC02")}),
                            Labelled("is-similarity", DropSimilar("TC01", "TC02"))});
  mr02.derived_from = {"MR01"};
  out.push_back(mr02);

  MRSpec mr03;
  mr03.id = "MR03";
  mr03.description =
      "Modifying 30% of the training images instead of all of them yields a higher IS and less "
      "grey tint, for birds and for trees.";
  mr03.predicate = All("", {PartialBeatsFull("birds", "TC03", "TC01"), PartialBeatsFull("trees", "TC04", "TC02")});
  mr03.derived_from = {"MR01"};
  out.push_back(mr03);

  MRSpec mr04;
  mr04.id = "MR04";
  mr04.description =
      "Green, blue and red copies of one bird, placed identically, all raise grey tint and lower "
      "IS by a similar relative amount.";
  mr04.predicate = All("", {All("is-similarity", {DropSimilar("TC05", "TC06"), DropSimilar("TC05", "TC07"),
                                                  DropSimilar("TC06", "TC07")}),
                            All("tint", {TintUp("TC05"), TintUp("TC06"), TintUp("TC07")})});
  mr04.derived_from = {"MR02", "MR03"};
  out.push_back(mr04);

  MRSpec mr05;
  mr05.id = "MR05";
  mr05.description =
      "An object inserted into every image without touching the focal box adds no grey tint and "
      "keeps IS within epsilon_is of the baseline.";
  mr05.predicate = All("", {Labelled("is", IsDrop("TC08")), Labelled("tint", TintFlat("TC08")),
                            Labelled("budget", Leaf(ClauseKind::kBudgetAtMost, "TC08", {}, {}, 0.0))});
  mr05.derived_from = {"MR02", "MR03", "MR04"};
  out.push_back(mr05);
  return out;
}

}  // namespace metamorph::mr
