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

// Command-line front end. Talks to the library only through the C API.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "metamorph/metamorph.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPipeline = 2;

// Failures of the run itself (model, placement, disk) as opposed to bad input.
bool IsPipelineFailure(int status) {
  switch (status) {
    case MM_E_NON_ZERO_EXIT:
    case MM_E_TIMEOUT:
    case MM_E_NO_OUTPUT_IMAGES:
    case MM_E_NO_VALID_PLACEMENT:
    case MM_E_IO_FAILURE:
    case MM_E_INTERNAL:
      return true;
    default:
      return false;
  }
}

int Report(int status) {
  if (status == MM_OK) return kExitOk;
  std::cerr << "error: " << mm_last_error() << "\n";
  return IsPipelineFailure(status) ? kExitPipeline : kExitValidation;
}

// Owns a string handed out by the library.
class Owned {
 public:
  Owned() = default;
  ~Owned() { mm_string_free(p_); }
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  char** out() { return &p_; }
  const char* get() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

bool ReadText(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

// JSON string literal for embedding a user-supplied name.
std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void AddThresholds(CLI::App* cmd, mm_thresholds& t) {
  cmd->add_option("--epsilon", t.epsilon_is, "Tolerated relative IS drop")->capture_default_str();
  cmd->add_option("--tau", t.tau_tint, "Tolerated tint rise over baseline")->capture_default_str();
  cmd->add_option("--epsilon-similar", t.epsilon_similar, "Tolerated gap between two relative IS drops")
      ->capture_default_str();
}

int Render(const char* report_json, const std::string& format) {
  Owned out;
  const int st = mm_render_report(report_json, format.c_str(), out.out());
  if (st != MM_OK) return Report(st);
  std::cout << out.get();
  return kExitOk;
}

int CmdIngest(const std::string& root) {
  mm_dataset* ds = nullptr;
  int st = mm_dataset_load(root.c_str(), &ds);
  if (st != MM_OK) return Report(st);
  Owned desc;
  st = mm_dataset_describe(ds, desc.out());
  mm_dataset_free(ds);
  if (st != MM_OK) return Report(st);
  std::cout << desc.get() << "\n";
  return kExitOk;
}

struct MutateArgs {
  std::string root;
  std::string preset;
  std::string spec_file;
  std::string out;
  uint64_t seed = 0;
  bool seed_set = false;
  unsigned workers = 1;
};

int CmdMutate(const MutateArgs& a) {
  std::string spec;
  std::string base_dir;
  if (!a.spec_file.empty()) {
    if (!ReadText(a.spec_file, spec)) {
      std::cerr << "error: cannot read " << a.spec_file << "\n";
      return kExitValidation;
    }
    base_dir = std::filesystem::absolute(a.spec_file).parent_path().string();
    if (a.seed_set) {
      // Let the flag win over the file.
      const auto brace = spec.rfind('}');
      if (brace == std::string::npos) {
        std::cerr << "error: spec must be a JSON object\n";
        return kExitValidation;
      }
      spec.insert(brace, ", \"seed\": " + std::to_string(a.seed));
    }
  } else {
    spec = "{\"preset\": " + Quote(a.preset) + ", \"seed\": " + std::to_string(a.seed) + "}";
  }
  mm_dataset* ds = nullptr;
  int st = mm_dataset_load(a.root.c_str(), &ds);
  if (st != MM_OK) return Report(st);
  Owned manifest;
  st = mm_mutate(ds, spec.c_str(), base_dir.empty() ? nullptr : base_dir.c_str(), a.out.c_str(), a.workers,
                 manifest.out());
  mm_dataset_free(ds);
  if (st != MM_OK) return Report(st);
  std::cout << "wrote " << a.out << "/manifest.json\n";
  return kExitOk;
}

int CmdRun(const std::string& config, const std::string& format, bool quiet) {
  Owned report;
  size_t failed = 0;
  auto progress = [](const char* m, void*) { std::cerr << m << "\n"; };
  const int st = mm_run_pipeline(config.c_str(), quiet ? nullptr : +progress, nullptr, report.out(), &failed);
  if (st != MM_OK) {
    std::cerr << "error: " << mm_last_error() << "\n";
    // Configuration problems are validation errors; anything after that is
    // the run failing.
    return st == MM_E_INVALID_CONFIG || st == MM_E_UNKNOWN_PRESET || st == MM_E_INVALID_ARGUMENT ? kExitValidation
                                                                                                 : kExitPipeline;
  }
  const int rc = Render(report.get(), format);
  if (rc != kExitOk) return rc;
  if (failed > 0) {
    std::cerr << failed << " test case(s) inconclusive because of errors\n";
    return kExitPipeline;
  }
  return kExitOk;
}

struct ScoreArgs {
  std::string images;
  std::string scores;
  bool builtin = false;
  size_t classes = 10;
  size_t splits = 10;
  uint64_t seed = 0;
  std::string write;
};

int CmdScore(const ScoreArgs& a) {
  mm_scoreset* set = nullptr;
  int st = a.builtin ? mm_scores_builtin(a.images.c_str(), a.classes, a.seed, &set)
                     : mm_scores_load(a.scores.c_str(), &set);
  if (st != MM_OK) return Report(st);
  double mean = 0, sd = 0;
  st = mm_inception_score(set, a.splits, &mean, &sd);
  if (st == MM_OK && !a.write.empty()) st = mm_scores_write(set, a.write.c_str());
  const size_t rows = mm_scores_rows(set);
  mm_scores_free(set);
  if (st != MM_OK) return Report(st);
  double tint = 0;
  size_t count = 0;
  st = mm_grey_tint_dir(a.images.c_str(), &tint, &count);
  if (st != MM_OK) return Report(st);
  Owned cell;
  mm_format_mean_std(mean, sd, cell.out());
  std::printf("rows %zu\nIS %s (mean %.6f, std %.6f, %zu splits)\ntint %.6f over %zu images\n", rows, cell.get(),
              mean, sd, a.splits, tint, count);
  return kExitOk;
}

int CmdMrEval(const std::string& records_file, const std::string& relations_file, const mm_thresholds& t,
              const std::string& format) {
  std::string records, relations;
  if (!ReadText(records_file, records)) {
    std::cerr << "error: cannot read " << records_file << "\n";
    return kExitValidation;
  }
  if (!relations_file.empty() && !ReadText(relations_file, relations)) {
    std::cerr << "error: cannot read " << relations_file << "\n";
    return kExitValidation;
  }
  Owned report;
  const int st =
      mm_mr_evaluate(records.c_str(), relations_file.empty() ? nullptr : relations.c_str(), t, report.out());
  if (st != MM_OK) return Report(st);
  return Render(report.get(), format);
}

int CmdLikertServe(const std::string& host, int port, const std::string& sessions, const std::string& images_root,
                   const std::string& static_dir) {
  // Handle SIGINT/SIGTERM on a dedicated thread so the server stops cleanly.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  mm_likert_service* svc = nullptr;
  int st = mm_likert_open(sessions.c_str(), images_root.empty() ? nullptr : images_root.c_str(),
                          static_dir.empty() ? nullptr : static_dir.c_str(), &svc);
  if (st != MM_OK) return Report(st);
  int bound = 0;
  st = mm_likert_bind(svc, host.c_str(), port, &bound);
  if (st != MM_OK) {
    mm_likert_free(svc);
    return Report(st);
  }
  std::cerr << "likert service on http://" << host << ":" << bound << "\n";
  std::thread waiter([svc, set] {
    int sig = 0;
    sigwait(&set, &sig);
    mm_likert_stop(svc);
  });
  st = mm_likert_serve(svc);
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  mm_likert_free(svc);
  return st == MM_OK ? kExitOk : Report(st);
}

int CmdReport(const std::string& in, const std::string& format) {
  Owned out;
  const int st = mm_render_report_file(in.c_str(), format.c_str(), out.out());
  if (st != MM_OK) return Report(st);
  std::cout << out.get();
  return kExitOk;
}

int CmdReplay(const mm_thresholds& t, const std::string& format) {
  Owned report;
  const int st = mm_replay_reference(t, report.out());
  if (st != MM_OK) return Report(st);
  return Render(report.get(), format);
}

int CmdSynth(const std::string& out, size_t images, size_t classes, uint64_t seed) {
  const int st = mm_dataset_synthesize(out.c_str(), images, classes, seed);
  if (st != MM_OK) return Report(st);
  std::cout << "wrote " << images << " images to " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metamorphic robustness testing for image generators"};
  app.set_version_flag("--version", std::string(mm_version()));
  app.require_subcommand(1);
  const std::vector<std::string> formats = {"table", "json", "markdown"};
  int rc = kExitOk;

  std::string ingest_root;
  auto* ingest = app.add_subcommand("ingest", "Validate a dataset and print a summary");
  ingest->add_option("--root", ingest_root, "Dataset root")->required();
  ingest->callback([&] { rc = CmdIngest(ingest_root); });

  MutateArgs mut;
  auto* mutate = app.add_subcommand("mutate", "Apply a test case to a dataset");
  mutate->add_option("--root", mut.root, "Dataset root")->required();
  auto* preset_opt = mutate->add_option("--preset", mut.preset, "Preset test case TC01..TC08");
  auto* spec_opt = mutate->add_option("--spec", mut.spec_file, "Test case JSON file");
  preset_opt->excludes(spec_opt);
  mutate->add_option("--out", mut.out, "Output directory")->required();
  auto* seed_opt = mutate->add_option("--seed", mut.seed, "Random seed");
  mutate->add_option("--workers", mut.workers, "Worker threads")->capture_default_str();
  mutate->callback([&] {
    if (mut.preset.empty() && mut.spec_file.empty()) {
      std::cerr << "error: one of --preset or --spec is required\n";
      rc = kExitValidation;
      return;
    }
    mut.seed_set = seed_opt->count() > 0;
    rc = CmdMutate(mut);
  });

  std::string run_config, run_format = "table";
  bool run_quiet = false;
  auto* run = app.add_subcommand("run", "Run a full study from a config file");
  run->add_option("--config", run_config, "RunConfig JSON")->required();
  run->add_option("--format", run_format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  run->add_flag("--quiet", run_quiet, "No progress output");
  run->callback([&] { rc = CmdRun(run_config, run_format, run_quiet); });

  ScoreArgs sc;
  auto* score = app.add_subcommand("score", "Inception Score and tint of an image directory");
  score->add_option("--images", sc.images, "Generated images")->required();
  auto* scores_opt = score->add_option("--scores", sc.scores, "Classifier scores file");
  auto* builtin_opt = score->add_flag("--builtin", sc.builtin, "Use the builtin classifier");
  scores_opt->excludes(builtin_opt);
  score->add_option("--classes", sc.classes, "Classes for --builtin")->capture_default_str();
  score->add_option("--splits", sc.splits, "IS splits")->capture_default_str();
  score->add_option("--seed", sc.seed, "Seed for --builtin")->capture_default_str();
  score->add_option("--write", sc.write, "Write the scores used to this file");
  score->callback([&] {
    if (sc.scores.empty() && !sc.builtin) {
      std::cerr << "error: one of --scores or --builtin is required\n";
      rc = kExitValidation;
      return;
    }
    rc = CmdScore(sc);
  });

  auto* mr = app.add_subcommand("mr", "Metamorphic relations");
  mr->require_subcommand(1);
  std::string mr_records, mr_relations, mr_format = "table";
  mm_thresholds mr_t = mm_default_thresholds();
  auto* eval = mr->add_subcommand("eval", "Evaluate relations over metric records");
  eval->add_option("--records", mr_records, "Records JSON (or a report.json)")->required();
  eval->add_option("--relations", mr_relations, "Relation JSON file (default: builtin MR01-MR05)");
  AddThresholds(eval, mr_t);
  eval->add_option("--format", mr_format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  eval->callback([&] { rc = CmdMrEval(mr_records, mr_relations, mr_t, mr_format); });

  auto* likert = app.add_subcommand("likert", "Human Likert scoring");
  likert->require_subcommand(1);
  std::string l_host = "127.0.0.1", l_sessions, l_images, l_static;
  int l_port = 8080;
  auto* serve = likert->add_subcommand("serve", "Serve the scoring HTTP API");
  serve->add_option("--port", l_port, "Port (0 picks one)")->capture_default_str();
  serve->add_option("--host", l_host, "Bind address")->capture_default_str();
  serve->add_option("--sessions", l_sessions, "Session storage directory")->required();
  serve->add_option("--images-root", l_images, "Base for relative images_dir in new sessions");
  serve->add_option("--static", l_static, "Directory served at / (rating frontend)");
  serve->callback([&] { rc = CmdLikertServe(l_host, l_port, l_sessions, l_images, l_static); });

  std::string rep_in, rep_format = "table";
  auto* report = app.add_subcommand("report", "Render a saved study report");
  report->add_option("--in", rep_in, "Run output directory or report.json")->required();
  report->add_option("--format", rep_format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  report->callback([&] { rc = CmdReport(rep_in, rep_format); });

  mm_thresholds rp_t = mm_default_thresholds();
  std::string rp_format = "table";
  auto* replay = app.add_subcommand("replay", "Evaluate the builtin relations on the reference study values");
  replay->alias("replay-table1");
  AddThresholds(replay, rp_t);
  replay->add_option("--format", rp_format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  replay->callback([&] { rc = CmdReplay(rp_t, rp_format); });

  std::string syn_out;
  size_t syn_images = 50, syn_classes = 5;
  uint64_t syn_seed = 1;
  auto* synth = app.add_subcommand("synth", "Write a small synthetic dataset");
  synth->add_option("--out", syn_out, "Output root")->required();
  synth->add_option("--images", syn_images, "Image count")->capture_default_str();
  synth->add_option("--classes", syn_classes, "Class count")->capture_default_str();
  synth->add_option("--seed", syn_seed, "Seed")->capture_default_str();
  synth->callback([&] { rc = CmdSynth(syn_out, syn_images, syn_classes, syn_seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  return rc;
}
