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

#include "pipeline/config.h"

#include <set>

#include "common/error.h"
#include "common/text.h"

namespace metamorph {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path Resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

ModelSpec ModelFromJson(const json& j, const fs::path& base, unsigned workers, uint64_t seed) {
  ModelSpec m;
  m.mock.workers = workers;
  m.mock.seed = seed;
  if (j.is_string()) {
    if (j.get<std::string>() != "mock") Fail(ErrorCode::kInvalidConfig, "model must be \"mock\" or an object");
    return m;
  }
  if (j.contains("mock")) {
    const json& mj = j.at("mock");
    m.mock.k_desat = mj.value("k_desat", m.mock.k_desat);
    m.mock.k_is_noise = mj.value("k_is_noise", m.mock.k_is_noise);
    m.mock.seed = mj.value("seed", m.mock.seed);
    return m;
  }
  m.kind = ModelSpec::Kind::kCommand;
  m.command.command_template = j.at("command").get<std::string>();
  m.command.timeout_seconds = j.value("timeout", m.command.timeout_seconds);
  if (j.contains("workdir")) m.command.workdir = Resolve(base, j.at("workdir").get<std::string>());
  ValidateCommand(m.command);
  return m;
}

ClassifierSpec ClassifierFromJson(const json& j, const fs::path& base) {
  ClassifierSpec c;
  if (j.is_string()) {
    if (j.get<std::string>() != "builtin") Fail(ErrorCode::kInvalidConfig, "classifier must be \"builtin\" or {\"scores\": ...}");
    return c;
  }
  c.builtin = false;
  c.scores_template = Resolve(base, j.at("scores").get<std::string>()).string();
  return c;
}

}  // namespace

RunConfig RunConfigFromJson(const json& j, const fs::path& base_dir) {
  RunConfig cfg;
  try {
    if (!j.is_object()) Fail(ErrorCode::kInvalidConfig, "config must be a JSON object");
    cfg.dataset_root = Resolve(base_dir, j.at("dataset_root").get<std::string>());
    cfg.output_root = Resolve(base_dir, j.at("output_root").get<std::string>());
    cfg.seed = j.value("seed", uint64_t{0});
    cfg.workers = std::max(1u, j.value("workers", 1u));
    cfg.n_splits = j.value("n_splits", cfg.n_splits);
    cfg.n_classes = j.value("n_classes", cfg.n_classes);
    for (const auto& tc : j.at("test_cases")) {
      TestCaseSpec spec;
      if (tc.is_string()) {
        spec = Preset(tc.get<std::string>());
        spec.seed = cfg.seed;
      } else {
        spec = TestCaseFromJson(tc, base_dir);
        if (!tc.contains("seed")) spec.seed = cfg.seed;
      }
      cfg.test_cases.push_back(std::move(spec));
    }
    cfg.model = ModelFromJson(j.value("model", json("mock")), base_dir, cfg.workers, cfg.seed);
    cfg.classifier = ClassifierFromJson(j.value("classifier", json("builtin")), base_dir);
    if (j.contains("thresholds")) {
      const json& t = j.at("thresholds");
      cfg.thresholds.epsilon_is = t.value("epsilon_is", cfg.thresholds.epsilon_is);
      cfg.thresholds.tau_tint = t.value("tau_tint", cfg.thresholds.tau_tint);
      cfg.thresholds.epsilon_similar = t.value("epsilon_similar", cfg.thresholds.epsilon_similar);
    }
    if (j.contains("likert_sessions")) {
      cfg.likert_sessions = Resolve(base_dir, j.at("likert_sessions").get<std::string>());
    }
    for (const auto& f : j.value("mr_files", std::vector<std::string>{})) {
      const json doc = json::parse(ReadFile(Resolve(base_dir, f)));
      if (doc.is_array()) {
        for (const auto& m : doc) cfg.extra_mrs.push_back(mr::SpecFromJson(m));
      } else {
        cfg.extra_mrs.push_back(mr::SpecFromJson(doc));
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, e.what());
  }
  ValidateRunConfig(cfg);
  return cfg;
}

RunConfig LoadRunConfig(const fs::path& path) {
  const std::string text = ReadFile(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  return RunConfigFromJson(j, fs::absolute(path).parent_path());
}

void ValidateRunConfig(const RunConfig& cfg) {
  if (cfg.test_cases.empty()) Fail(ErrorCode::kInvalidConfig, "at least one test case required");
  std::set<std::string> names;
  for (const auto& tc : cfg.test_cases) {
    if (tc.name == kBaselineName) Fail(ErrorCode::kInvalidConfig, "\"baseline\" is reserved");
    if (tc.name.empty() || tc.name.find_first_of("/\\") != std::string::npos) {
      Fail(ErrorCode::kInvalidConfig, "test case names must be non-empty and contain no path separators");
    }
    if (!names.insert(tc.name).second) Fail(ErrorCode::kInvalidConfig, "duplicate test case " + tc.name);
    ValidateTestCase(tc);
  }
  if (cfg.n_splits == 0) Fail(ErrorCode::kInvalidConfig, "n_splits must be >= 1");
  if (cfg.n_classes < 2) Fail(ErrorCode::kInvalidConfig, "n_classes must be >= 2");
  const auto& t = cfg.thresholds;
  if (!(t.epsilon_is >= 0) || !(t.tau_tint >= 0) || !(t.epsilon_similar >= 0)) {
    Fail(ErrorCode::kInvalidConfig, "thresholds must be non-negative");
  }
  if (cfg.dataset_root.empty()) Fail(ErrorCode::kInvalidConfig, "dataset_root required");
  if (cfg.output_root.empty()) Fail(ErrorCode::kInvalidConfig, "output_root required");
  if (cfg.model.kind == ModelSpec::Kind::kMock && !(cfg.model.mock.k_desat >= 0 && cfg.model.mock.k_is_noise >= 0)) {
    Fail(ErrorCode::kInvalidConfig, "mock coefficients must be non-negative");
  }
  if (cfg.model.kind == ModelSpec::Kind::kCommand) ValidateCommand(cfg.model.command);
}

json RunSettingsToJson(const RunConfig& cfg) {
  json model;
  if (cfg.model.kind == ModelSpec::Kind::kMock) {
    model = {{"mock",
              {{"k_desat", cfg.model.mock.k_desat},
               {"k_is_noise", cfg.model.mock.k_is_noise},
               {"seed", cfg.model.mock.seed}}}};
  } else {
    model = {{"command", cfg.model.command.command_template}, {"timeout", cfg.model.command.timeout_seconds}};
  }
  return {{"seed", cfg.seed},
          {"n_splits", cfg.n_splits},
          {"n_classes", cfg.n_classes},
          {"thresholds",
           {{"epsilon_is", cfg.thresholds.epsilon_is},
            {"tau_tint", cfg.thresholds.tau_tint},
            {"epsilon_similar", cfg.thresholds.epsilon_similar}}},
          {"model", model},
          {"classifier", cfg.classifier.builtin ? json("builtin") : json("scores-file")}};
}

}  // namespace metamorph
