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

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "gtest/gtest.h"
#include "httplib.h"
#include "metamorph/metamorph.h"

extern "C" int mm_header_check_default_ok(void);

namespace {

namespace fs = std::filesystem;

// Owns a string returned by the library.
struct Owned {
  char* s = nullptr;
  ~Owned() { mm_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

class CapiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static std::atomic<int> n{0};
    dir_ = fs::temp_directory_path() / ("mm-capi-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void Write(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << text;
  }

  fs::path dir_;
};

TEST_F(CapiTest, VersionAndStatusNames) {
  EXPECT_STREQ(mm_version(), METAMORPH_TEST_VERSION);
  EXPECT_STREQ(mm_status_name(MM_OK), "OK");
  EXPECT_STREQ(mm_status_name(MM_E_SESSION_CLOSED), "SessionClosed");
  EXPECT_STREQ(mm_status_name(MM_E_INTERNAL), "Internal");
  EXPECT_EQ(mm_header_check_default_ok(), 1);
  const mm_thresholds t = mm_default_thresholds();
  EXPECT_DOUBLE_EQ(t.epsilon_is, 0.10);
  EXPECT_DOUBLE_EQ(t.tau_tint, 0.10);
  EXPECT_DOUBLE_EQ(t.epsilon_similar, 0.05);
}

TEST_F(CapiTest, KlDivergence) {
  const double p[] = {0.5, 0.5}, q[] = {0.25, 0.75};
  double out = -1;
  ASSERT_EQ(mm_kl_divergence(p, q, 2, &out), MM_OK);
  EXPECT_NEAR(out, 0.5 * std::log(2.0) + 0.5 * std::log(0.5 / 0.75), 1e-15);
  const double z[] = {1.0, 0.0};
  EXPECT_EQ(mm_kl_divergence(p, z, 2, &out), MM_E_SINGULAR_SUPPORT);
  EXPECT_NE(std::string(mm_last_error()).size(), 0u);
  EXPECT_EQ(mm_kl_divergence(nullptr, q, 2, &out), MM_E_INVALID_ARGUMENT);
}

TEST_F(CapiTest, FormatMeanStd) {
  Owned s;
  ASSERT_EQ(mm_format_mean_std(3.0, std::sqrt(2.5), &s.s), MM_OK);
  EXPECT_EQ(s.str(), "3.00(158)");
}

TEST_F(CapiTest, DatasetMutateScoreTint) {
  const std::string root = (dir_ / "data").string();
  ASSERT_EQ(mm_dataset_synthesize(root.c_str(), 12, 3, 5), MM_OK);
  mm_dataset* ds = nullptr;
  ASSERT_EQ(mm_dataset_load(root.c_str(), &ds), MM_OK) << mm_last_error();
  EXPECT_EQ(mm_dataset_size(ds), 12u);
  Owned desc;
  ASSERT_EQ(mm_dataset_describe(ds, &desc.s), MM_OK);
  EXPECT_NE(desc.str().find("\"images\""), std::string::npos) << desc.str();

  Owned spec;
  ASSERT_EQ(mm_preset_spec("TC08", &spec.s), MM_OK);
  EXPECT_NE(spec.str().find("TC08"), std::string::npos);
  EXPECT_EQ(mm_preset_spec("TC42", &spec.s), MM_E_UNKNOWN_PRESET);

  Owned manifest;
  const std::string out = (dir_ / "tc08").string();
  ASSERT_EQ(mm_mutate(ds, R"({"preset": "TC08", "seed": 3})", nullptr, out.c_str(), 1, &manifest.s), MM_OK)
      << mm_last_error();
  EXPECT_NE(manifest.str().find("\"placements\""), std::string::npos);
  EXPECT_EQ(mm_mutate(ds, "{not json", nullptr, out.c_str(), 1, &manifest.s), MM_E_INVALID_CONFIG);
  mm_dataset_free(ds);

  mm_scoreset* scores = nullptr;
  const std::string images = (dir_ / "tc08/images").string();
  ASSERT_EQ(mm_scores_builtin(images.c_str(), 4, 0, &scores), MM_OK) << mm_last_error();
  EXPECT_EQ(mm_scores_rows(scores), 12u);
  EXPECT_EQ(mm_scores_classes(scores), 4u);
  double mean = 0, std = 0;
  ASSERT_EQ(mm_inception_score(scores, 3, &mean, &std), MM_OK);
  EXPECT_GE(mean, 1.0);
  EXPECT_LE(mean, 4.0 + 1e-9);
  EXPECT_EQ(mm_inception_score(scores, 13, &mean, &std), MM_E_TOO_FEW_ROWS);
  const std::string written = (dir_ / "scores.txt").string();
  ASSERT_EQ(mm_scores_write(scores, written.c_str()), MM_OK);
  mm_scores_free(scores);

  mm_scoreset* reloaded = nullptr;
  ASSERT_EQ(mm_scores_load(written.c_str(), &reloaded), MM_OK);
  double mean2 = 0, std2 = 0;
  ASSERT_EQ(mm_inception_score(reloaded, 3, &mean2, &std2), MM_OK);
  EXPECT_NEAR(mean2, mean, 1e-9);
  mm_scores_free(reloaded);

  double tint = -1;
  size_t count = 0;
  ASSERT_EQ(mm_grey_tint_dir(images.c_str(), &tint, &count), MM_OK);
  EXPECT_EQ(count, 12u);
  EXPECT_GE(tint, 0.0);
  EXPECT_LE(tint, 1.0);
  EXPECT_EQ(mm_grey_tint_file((dir_ / "missing.png").string().c_str(), &tint), MM_E_MISSING_FILE);
}

TEST_F(CapiTest, MrEvaluateAndReplay) {
  Owned replay;
  ASSERT_EQ(mm_replay_reference(mm_default_thresholds(), &replay.s), MM_OK);
  EXPECT_NE(replay.str().find("\"verdicts\""), std::string::npos);

  // Re-evaluating the replayed records gives the same verdicts.
  Owned again;
  ASSERT_EQ(mm_mr_evaluate(replay.s, nullptr, mm_default_thresholds(), &again.s), MM_OK) << mm_last_error();
  Owned table;
  ASSERT_EQ(mm_render_report(again.s, "table", &table.s), MM_OK);
  EXPECT_NE(table.str().find("MR01  Violated"), std::string::npos) << table.str();
  EXPECT_NE(table.str().find("MR03  Satisfied"), std::string::npos) << table.str();
  EXPECT_EQ(mm_render_report(again.s, "html", &table.s), MM_E_INVALID_ARGUMENT);

  const std::string records = R"({
    "baseline": {"is": {"mean": 4.0, "std": 0.1, "n_splits": 10}, "tint": 0.3},
    "TC01": {"is": {"mean": 3.9, "std": 0.1, "n_splits": 10}, "tint": 0.32,
             "proportion": 1.0, "occlusion_budget": 0.05, "object_class": "bird", "object_kind": "BirdSet"}})";
  Owned report;
  ASSERT_EQ(mm_mr_evaluate(records.c_str(), nullptr, mm_default_thresholds(), &report.s), MM_OK)
      << mm_last_error();
  EXPECT_NE(report.str().find("\"Satisfied\""), std::string::npos) << report.str();
  EXPECT_EQ(mm_mr_evaluate("[1,2]", nullptr, mm_default_thresholds(), &report.s), MM_E_INVALID_CONFIG);
}

TEST_F(CapiTest, RunPipelineFromConfigFile) {
  ASSERT_EQ(mm_dataset_synthesize((dir_ / "data").string().c_str(), 20, 3, 1), MM_OK);
  Write(dir_ / "study.json",
        R"({"dataset_root": "data", "output_root": "out", "seed": 3, "n_splits": 4, "test_cases": ["TC01"]})");
  std::vector<std::string> notes;
  auto progress = [](const char* m, void* user) { static_cast<std::vector<std::string>*>(user)->push_back(m); };
  Owned report;
  size_t failed = 99;
  ASSERT_EQ(mm_run_pipeline((dir_ / "study.json").string().c_str(), progress, &notes, &report.s, &failed), MM_OK)
      << mm_last_error();
  EXPECT_EQ(failed, 0u);
  EXPECT_FALSE(notes.empty());
  Owned md;
  ASSERT_EQ(mm_render_report_file((dir_ / "out").string().c_str(), "markdown", &md.s), MM_OK);
  EXPECT_NE(md.str().find("# Study report"), std::string::npos);

  Write(dir_ / "bad.json", R"({"dataset_root": "data", "output_root": "out", "test_cases": []})");
  EXPECT_EQ(mm_run_pipeline((dir_ / "bad.json").string().c_str(), nullptr, nullptr, &report.s, &failed),
            MM_E_INVALID_CONFIG);
}

TEST_F(CapiTest, LikertServiceLifecycle) {
  mm_likert_service* svc = nullptr;
  ASSERT_EQ(mm_likert_open((dir_ / "sessions").string().c_str(), dir_.string().c_str(), nullptr, &svc), MM_OK);
  int port = 0;
  ASSERT_EQ(mm_likert_bind(svc, "127.0.0.1", 0, &port), MM_OK);
  EXPECT_GT(port, 0);
  std::thread t([svc] { mm_likert_serve(svc); });
  // Stop only takes effect once the server loop is running.
  httplib::Client client("127.0.0.1", port);
  bool up = false;
  for (int i = 0; i < 100 && !up; ++i) {
    auto res = client.Get("/sessions");
    up = res && res->status == 200;
    if (!up) std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  EXPECT_TRUE(up);
  mm_likert_stop(svc);
  t.join();
  mm_likert_free(svc);
}

TEST_F(CapiTest, NullArguments) {
  EXPECT_EQ(mm_dataset_load(nullptr, nullptr), MM_E_INVALID_ARGUMENT);
  EXPECT_EQ(mm_format_mean_std(1.0, 0.1, nullptr), MM_E_INVALID_ARGUMENT);
  mm_dataset_free(nullptr);
  mm_scores_free(nullptr);
  mm_string_free(nullptr);
}

}  // namespace
