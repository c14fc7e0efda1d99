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

#include "modelio/run_model.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>

#include "common/error.h"
#include "image/codec.h"
#include "metrics/classifier.h"
#include "mutate/apply.h"

namespace metamorph {

namespace fs = std::filesystem;

namespace {

constexpr size_t kLogTail = 2048;

size_t CountOccurrences(const std::string& haystack, const std::string& needle) {
  size_t n = 0;
  for (size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

void ReplaceOnce(std::string& s, const std::string& from, const std::string& to) {
  const size_t pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
}

std::string Tail(const std::string& log) {
  return log.size() <= kLogTail ? log : log.substr(log.size() - kLogTail);
}

}  // namespace

void ValidateCommand(const ModelCommand& cmd) {
  for (const char* ph : {"{input_dir}", "{output_dir}"}) {
    if (CountOccurrences(cmd.command_template, ph) != 1) {
      Fail(ErrorCode::kInvalidConfig, std::string("model command must contain ") + ph + " exactly once");
    }
  }
  if (!(cmd.timeout_seconds > 0)) Fail(ErrorCode::kInvalidConfig, "model timeout must be positive");
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

GenerationResult RunModel(const ModelCommand& cmd, const fs::path& mutated, const fs::path& output_dir) {
  ValidateCommand(cmd);
  if (!fs::is_directory(mutated)) Fail(ErrorCode::kMissingFile, mutated.string());
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + output_dir.string());

  const fs::path input_abs = fs::absolute(mutated);
  const fs::path output_abs = fs::absolute(output_dir);
  std::string command = cmd.command_template;
  ReplaceOnce(command, "{input_dir}", ShellQuote(input_abs.string()));
  ReplaceOnce(command, "{output_dir}", ShellQuote(output_abs.string()));
  const std::string manifest = (input_abs / kManifestFile).string();

  int pipe_fds[2];
  if (pipe(pipe_fds) != 0) Fail(ErrorCode::kIoFailure, std::string("pipe: ") + std::strerror(errno));

  const auto start = std::chrono::steady_clock::now();
  const pid_t pid = fork();
  if (pid < 0) Fail(ErrorCode::kIoFailure, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    // Child: own process group so a timeout can kill the whole tree.
    setpgid(0, 0);
    dup2(pipe_fds[1], STDOUT_FILENO);
    dup2(pipe_fds[1], STDERR_FILENO);
    close(pipe_fds[0]);
    close(pipe_fds[1]);
    int devnull = open("/dev/null", O_RDONLY);
    if (devnull >= 0) dup2(devnull, STDIN_FILENO);
    if (!cmd.workdir.empty() && chdir(cmd.workdir.c_str()) != 0) _exit(127);
    setenv(kManifestEnvVar, manifest.c_str(), 1);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(pipe_fds[1]);

  GenerationResult result;
  result.output_dir = output_dir;
  bool timed_out = false;
  bool eof = false;
  char buf[4096];
  while (!eof) {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double remaining = cmd.timeout_seconds - elapsed;
    if (remaining <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfd{pipe_fds[0], POLLIN, 0};
    const int wait_ms = static_cast<int>(std::min(remaining * 1000.0, 200.0)) + 1;
    const int rc = poll(&pfd, 1, wait_ms);
    if (rc < 0 && errno != EINTR) break;
    if (rc > 0) {
      const ssize_t n = read(pipe_fds[0], buf, sizeof(buf));
      if (n > 0) {
        result.model_log.append(buf, static_cast<size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        eof = true;
      }
    }
  }
  close(pipe_fds[0]);

  int status = 0;
  if (timed_out) {
    kill(-pid, SIGKILL);
    waitpid(pid, &status, 0);
    Fail(ErrorCode::kTimeout, "model exceeded " + std::to_string(cmd.timeout_seconds) + " s; log tail:\n" +
                                  Tail(result.model_log));
  }
  // Output closed; the shell may still be exiting.
  for (;;) {
    const pid_t w = waitpid(pid, &status, 0);
    if (w == pid || (w < 0 && errno != EINTR)) break;
  }
  result.wallclock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
  if (code != 0) {
    Fail(ErrorCode::kNonZeroExit, "exit code " + std::to_string(code) + "; log tail:\n" + Tail(result.model_log));
  }

  for (const auto& p : ListImages(output_dir)) {
    ReadRgb(p);  // every sample must decode
    result.images.emplace_back(p.stem().string(), p);
  }
  if (result.images.empty()) Fail(ErrorCode::kNoOutputImages, output_dir.string());
  return result;
}

}  // namespace metamorph
