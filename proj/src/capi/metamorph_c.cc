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

#include "metamorph/metamorph.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "common/error.h"
#include "common/summation.h"
#include "common/text.h"
#include "dataset/dataset.h"
#include "dataset/synthetic.h"
#include "image/codec.h"
#include "likert/service.h"
#include "metrics/classifier.h"
#include "metrics/inception_score.h"
#include "metrics/kl.h"
#include "metrics/scores.h"
#include "metrics/tint.h"
#include "mrengine/relation.h"
#include "mutate/apply.h"
#include "mutate/test_case.h"
#include "pipeline/pipeline.h"
#include "pipeline/replay.h"
#include "pipeline/report.h"

struct mm_dataset {
  metamorph::AnnotatedDataset ds;
};

struct mm_scoreset {
  metamorph::ScoreSet scores;
};

struct mm_likert_service {
  std::unique_ptr<metamorph::likert::Service> service;
};

namespace {

using metamorph::ErrorCode;
using nlohmann::json;

static_assert(MM_E_UNKNOWN_SESSION == 1 + static_cast<int>(ErrorCode::kUnknownSession),
              "mm_status must mirror ErrorCode");

thread_local std::string g_last_error;

int Status(ErrorCode code) { return 1 + static_cast<int>(code); }

int SetError(int status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
int Guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return MM_OK;
  } catch (const metamorph::Error& e) {
    return SetError(Status(e.code()), e.what());
  } catch (const json::exception& e) {
    return SetError(Status(ErrorCode::kInvalidConfig), std::string("InvalidConfig: ") + e.what());
  } catch (const std::bad_alloc&) {
    return SetError(MM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(MM_E_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) metamorph::Fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

metamorph::mr::MRParameters Params(const mm_thresholds& t) { return {t.epsilon_is, t.tau_tint, t.epsilon_similar}; }

json ParseJson(const char* text, const char* what) {
  Require(text != nullptr, what);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    metamorph::Fail(ErrorCode::kInvalidConfig, std::string(what) + ": " + e.what());
  }
}

}  // namespace

extern "C" {

const char* mm_version(void) { return METAMORPH_VERSION; }

const char* mm_last_error(void) { return g_last_error.c_str(); }

const char* mm_status_name(int status) {
  if (status == MM_OK) return "OK";
  if (status == MM_E_INTERNAL) return "Internal";
  if (status < 1 || status > MM_E_UNKNOWN_SESSION) return "Unknown";
  // Names are string literals, so the view is NUL-terminated.
  return metamorph::ErrorCodeName(static_cast<ErrorCode>(status - 1)).data();
}

void mm_string_free(char* s) { std::free(s); }

mm_thresholds mm_default_thresholds(void) {
  return {metamorph::mr::kDefaultEpsilonIs, metamorph::mr::kDefaultTauTint, metamorph::mr::kDefaultEpsilonSimilar};
}

int mm_dataset_load(const char* root, mm_dataset** out) {
  return Guard([&] {
    Require(root && out, "root/out");
    auto ds = std::make_unique<mm_dataset>();
    ds->ds = metamorph::LoadDataset(root);
    *out = ds.release();
  });
}

void mm_dataset_free(mm_dataset* ds) { delete ds; }

size_t mm_dataset_size(const mm_dataset* ds) { return ds ? ds->ds.size() : 0; }

int mm_dataset_describe(const mm_dataset* ds, char** json_out) {
  return Guard([&] {
    Require(ds && json_out, "dataset/out");
    json j = {{"root", ds->ds.root().string()},
              {"images", ds->ds.size()},
              {"classes", ds->ds.classes().size()},
              {"train", ds->ds.CountSplit(metamorph::Split::kTrain)},
              {"test", ds->ds.CountSplit(metamorph::Split::kTest)}};
    *json_out = Dup(j.dump(2));
  });
}

int mm_dataset_synthesize(const char* root, size_t n_images, size_t n_classes, uint64_t seed) {
  return Guard([&] {
    Require(root, "root");
    metamorph::SyntheticOptions opts;
    opts.n_images = static_cast<int>(n_images);
    opts.n_classes = static_cast<int>(n_classes);
    opts.seed = seed;
    metamorph::WriteSyntheticDataset(root, opts);
  });
}

int mm_preset_spec(const char* name, char** json_out) {
  return Guard([&] {
    Require(name && json_out, "name/out");
    *json_out = Dup(metamorph::TestCaseToJson(metamorph::Preset(name)).dump(2));
  });
}

int mm_mutate(const mm_dataset* ds, const char* spec_json, const char* base_dir, const char* out_dir,
              unsigned workers, char** manifest_json_out) {
  return Guard([&] {
    Require(ds && out_dir, "dataset/out_dir");
    const json j = ParseJson(spec_json, "spec");
    const metamorph::TestCaseSpec spec = metamorph::TestCaseFromJson(j, base_dir ? base_dir : "");
    const auto manifest = metamorph::ApplyTestCase(ds->ds, spec, out_dir, {workers});
    if (manifest_json_out) *manifest_json_out = Dup(metamorph::ManifestToJson(manifest).dump(2));
  });
}

int mm_kl_divergence(const double* p, const double* q, size_t n, double* out) {
  return Guard([&] {
    Require(p && q && out, "p/q/out");
    *out = metamorph::KlDivergence({p, n}, {q, n});
  });
}

int mm_scores_load(const char* path, mm_scoreset** out) {
  return Guard([&] {
    Require(path && out, "path/out");
    auto s = std::make_unique<mm_scoreset>();
    s->scores = metamorph::LoadScores(path);
    *out = s.release();
  });
}

int mm_scores_builtin(const char* images_dir, size_t n_classes, uint64_t seed, mm_scoreset** out) {
  return Guard([&] {
    Require(images_dir && out, "images_dir/out");
    auto s = std::make_unique<mm_scoreset>();
    s->scores = metamorph::BuiltinClassifier(metamorph::LoadImageDirectory(images_dir), n_classes, seed);
    *out = s.release();
  });
}

void mm_scores_free(mm_scoreset* s) { delete s; }

size_t mm_scores_rows(const mm_scoreset* s) { return s ? s->scores.rows.size() : 0; }

size_t mm_scores_classes(const mm_scoreset* s) { return s ? s->scores.n_classes : 0; }

int mm_scores_write(const mm_scoreset* s, const char* path) {
  return Guard([&] {
    Require(s && path, "scores/path");
    metamorph::WriteScores(path, s->scores);
  });
}

int mm_inception_score(const mm_scoreset* s, size_t n_splits, double* mean, double* std) {
  return Guard([&] {
    Require(s && mean && std, "scores/mean/std");
    const auto r = metamorph::InceptionScore(s->scores, n_splits);
    *mean = r.mean;
    *std = r.std;
  });
}

int mm_grey_tint_file(const char* path, double* out) {
  return Guard([&] {
    Require(path && out, "path/out");
    *out = metamorph::GreyTintScore(metamorph::ReadRgb(path));
  });
}

int mm_grey_tint_dir(const char* dir, double* mean, size_t* count) {
  return Guard([&] {
    Require(dir && mean, "dir/mean");
    const auto files = metamorph::ListImages(dir);
    if (files.empty()) metamorph::Fail(ErrorCode::kNoOutputImages, std::string("no images in ") + dir);
    metamorph::CompensatedSum sum;
    for (const auto& f : files) sum.Add(metamorph::GreyTintScore(metamorph::ReadRgb(f)));
    *mean = sum.value() / static_cast<double>(files.size());
    if (count) *count = files.size();
  });
}

int mm_format_mean_std(double mean, double std, char** out) {
  return Guard([&] {
    Require(out, "out");
    *out = Dup(metamorph::FormatMeanStd(mean, std));
  });
}

int mm_mr_evaluate(const char* records_json, const char* mrs_json, mm_thresholds thresholds,
                   char** report_json_out) {
  return Guard([&] {
    Require(report_json_out, "out");
    const json records = ParseJson(records_json, "records");
    metamorph::StudyReport report;
    report.records = metamorph::mr::RecordsFromJson(records.contains("records") ? records.at("records") : records);
    if (records.contains("order")) {
      report.order = records.at("order").get<std::vector<std::string>>();
    } else {
      for (const auto& [name, rec] : report.records) report.order.push_back(name);
    }
    std::vector<metamorph::mr::MRSpec> mrs;
    if (mrs_json) {
      const json j = ParseJson(mrs_json, "relations");
      if (j.is_array()) {
        for (const auto& m : j) mrs.push_back(metamorph::mr::SpecFromJson(m));
      } else {
        mrs.push_back(metamorph::mr::SpecFromJson(j));
      }
      // Thresholds given on the call override those in the file.
      mrs = metamorph::mr::WithParameters(std::move(mrs), Params(thresholds));
    } else {
      mrs = metamorph::mr::WithParameters(metamorph::mr::BuiltinMRs(), Params(thresholds));
    }
    report.environment = {{"source", "mr-eval"},
                          {"thresholds",
                           {{"epsilon_is", thresholds.epsilon_is},
                            {"tau_tint", thresholds.tau_tint},
                            {"epsilon_similar", thresholds.epsilon_similar}}}};
    metamorph::EvaluateRelations(report, mrs);
    *report_json_out = Dup(metamorph::RenderReport(report, metamorph::ReportFormat::kJson));
  });
}

int mm_run_pipeline(const char* config_path, mm_progress_fn progress, void* user, char** report_json_out,
                    size_t* n_failed) {
  return Guard([&] {
    Require(config_path, "config_path");
    const auto cfg = metamorph::LoadRunConfig(config_path);
    metamorph::ProgressFn fn;
    if (progress) fn = [progress, user](const std::string& m) { progress(m.c_str(), user); };
    const auto report = metamorph::RunPipeline(cfg, fn);
    if (n_failed) *n_failed = report.failures.size();
    if (report_json_out) *report_json_out = Dup(metamorph::RenderReport(report, metamorph::ReportFormat::kJson));
  });
}

int mm_render_report(const char* report_json, const char* format, char** out) {
  return Guard([&] {
    Require(format && out, "format/out");
    const auto fmt = metamorph::ParseReportFormat(format);
    const auto report = metamorph::ReportFromJson(ParseJson(report_json, "report"));
    *out = Dup(metamorph::RenderReport(report, fmt));
  });
}

int mm_render_report_file(const char* path, const char* format, char** out) {
  return Guard([&] {
    Require(path && format && out, "path/format/out");
    const auto fmt = metamorph::ParseReportFormat(format);
    *out = Dup(metamorph::RenderReport(metamorph::ReadReport(path), fmt));
  });
}

int mm_replay_reference(mm_thresholds thresholds, char** report_json_out) {
  return Guard([&] {
    Require(report_json_out, "out");
    const auto report = metamorph::ReplayReferenceStudy(Params(thresholds));
    *report_json_out = Dup(metamorph::RenderReport(report, metamorph::ReportFormat::kJson));
  });
}

int mm_likert_open(const char* sessions_dir, const char* images_root, const char* static_dir,
                   mm_likert_service** out) {
  return Guard([&] {
    Require(sessions_dir && out, "sessions_dir/out");
    metamorph::likert::ServiceOptions opts;
    opts.sessions_dir = sessions_dir;
    if (images_root) opts.images_root = images_root;
    if (static_dir) opts.static_dir = static_dir;
    auto svc = std::make_unique<mm_likert_service>();
    svc->service = std::make_unique<metamorph::likert::Service>(opts);
    *out = svc.release();
  });
}

int mm_likert_bind(mm_likert_service* svc, const char* host, int port, int* bound_port) {
  return Guard([&] {
    Require(svc && host, "service/host");
    const int p = svc->service->Bind(host, port);
    if (p < 0) metamorph::Fail(ErrorCode::kIoFailure, "cannot bind " + std::string(host) + ":" + std::to_string(port));
    if (bound_port) *bound_port = p;
  });
}

int mm_likert_serve(mm_likert_service* svc) {
  return Guard([&] {
    Require(svc, "service");
    if (!svc->service->ListenAfterBind()) metamorph::Fail(ErrorCode::kIoFailure, "listen failed");
  });
}

void mm_likert_stop(mm_likert_service* svc) {
  if (svc) svc->service->Stop();
}

void mm_likert_free(mm_likert_service* svc) { delete svc; }

}  // extern "C"
