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

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args` (already shell-quoted where needed).
Result Cli(const std::string& args) {
  const std::string cmd = std::string("'") + METAMORPH_CLI_PATH + "' " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mm-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& rel) const { return "'" + (dir_ / rel).string() + "'"; }

  void Write(const std::string& rel, const std::string& text) const {
    fs::create_directories((dir_ / rel).parent_path());
    std::ofstream(dir_ / rel) << text;
  }

  fs::path dir_;
};

TEST_F(CliTest, Version) {
  const Result r = Cli("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find(METAMORPH_TEST_VERSION), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("ingest").code, 1);
  EXPECT_EQ(Cli("ingest --root " + P("missing")).code, 1);
  EXPECT_EQ(Cli("replay --format html").code, 1);
}

TEST_F(CliTest, SynthIngestMutateScore) {
  ASSERT_EQ(Cli("synth --out " + P("data") + " --images 12 --classes 3 --seed 2").code, 0);
  const Result ingest = Cli("ingest --root " + P("data"));
  EXPECT_EQ(ingest.code, 0) << ingest.out;
  EXPECT_NE(ingest.out.find("12"), std::string::npos);

  const Result mutate = Cli("mutate --root " + P("data") + " --preset TC08 --seed 1 --out " + P("tc08"));
  EXPECT_EQ(mutate.code, 0) << mutate.out;
  EXPECT_TRUE(fs::exists(dir_ / "tc08/manifest.json"));
  EXPECT_EQ(Cli("mutate --root " + P("data") + " --preset TC09 --out " + P("x")).code, 1);
  EXPECT_EQ(Cli("mutate --root " + P("data") + " --out " + P("x")).code, 1);

  const Result score = Cli("score --images " + P("tc08/images") + " --builtin --classes 3 --splits 3 --write " +
                           P("scores.txt"));
  EXPECT_EQ(score.code, 0) << score.out;
  EXPECT_NE(score.out.find("IS"), std::string::npos) << score.out;
  EXPECT_TRUE(fs::exists(dir_ / "scores.txt"));
  const Result again = Cli("score --images " + P("tc08/images") + " --scores " + P("scores.txt") + " --splits 3");
  EXPECT_EQ(again.code, 0) << again.out;
}

TEST_F(CliTest, ReplayMatchesGolden) {
  const Result table = Cli("replay");
  EXPECT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("MR01  Violated"), std::string::npos) << table.out;
  EXPECT_NE(table.out.find("4.16(3)"), std::string::npos);
  const Result json = Cli("replay --format json");
  EXPECT_EQ(json.code, 0);
  EXPECT_EQ(json.out, Slurp(fs::path(METAMORPH_GOLDEN_DIR) / "replay_reference.json"));
  const Result loose = Cli("replay --epsilon-similar 0.1");
  EXPECT_NE(loose.out.find("MR02  Satisfied"), std::string::npos) << loose.out;
}

TEST_F(CliTest, RunReportAndExitCodes) {
  ASSERT_EQ(Cli("synth --out " + P("data") + " --images 20 --classes 3 --seed 4").code, 0);
  Write("ok.json", R"({"dataset_root": "data", "output_root": "out", "seed": 1, "n_splits": 4,
                       "test_cases": ["TC01"]})");
  const Result ok = Cli("run --quiet --config " + P("ok.json"));
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_NE(ok.out.find("MR01"), std::string::npos);

  const Result md = Cli("report --in " + P("out") + " --format markdown");
  EXPECT_EQ(md.code, 0);
  EXPECT_NE(md.out.find("# Study report"), std::string::npos);

  Write("records.json", Slurp(dir_ / "out/report.json"));
  const Result eval = Cli("mr eval --records " + P("records.json") + " --format json");
  EXPECT_EQ(eval.code, 0) << eval.out;
  EXPECT_NE(eval.out.find("\"verdicts\""), std::string::npos);

  Write("bad.json", R"({"dataset_root": "data", "output_root": "out", "test_cases": ["TC01", "TC01"]})");
  EXPECT_EQ(Cli("run --quiet --config " + P("bad.json")).code, 1);
  Write("broken.json", "{");
  EXPECT_EQ(Cli("run --quiet --config " + P("broken.json")).code, 1);

  Write("fail.json", R"({"dataset_root": "data", "output_root": "out2", "n_splits": 4, "test_cases": ["TC01"],
                         "model": {"command": "echo {input_dir} {output_dir}; exit 5"}})");
  const Result failed = Cli("run --quiet --config " + P("fail.json"));
  EXPECT_EQ(failed.code, 2) << failed.out;
  EXPECT_NE(failed.out.find("NonZeroExit"), std::string::npos) << failed.out;
}

}  // namespace
