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

#ifndef METAMORPH_LIKERT_SERVICE_H_
#define METAMORPH_LIKERT_SERVICE_H_

#include <filesystem>
#include <memory>
#include <string>

#include "common/error.h"
#include "likert/store.h"

namespace metamorph::likert {

struct ServiceOptions {
  std::filesystem::path sessions_dir;
  // Relative `images_dir` values in POST /sessions and relative image paths
  // resolve against this.
  std::filesystem::path images_root = ".";
  // Optional directory of static files served at "/" (the rating frontend).
  std::filesystem::path static_dir;
};

// HTTP front end over a Store. Request and response bodies are JSON; errors
// come back as {"error": kind, "message": text} with 400 for validation
// failures, 404 for unknown ids and 409 for closed sessions.
class Service {
 public:
  explicit Service(ServiceOptions opts, Store::Clock clock = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and serves until Stop(). Returns false when binding fails.
  bool Listen(const std::string& host, int port);
  // Binds (port 0: any free port) and returns the port, -1 on failure; call
  // ListenAfterBind() to serve.
  int Bind(const std::string& host, int port);
  bool ListenAfterBind();
  void Stop();
  bool IsRunning() const;
  void WaitUntilReady() const;

  Store& store();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for a library error kind.
int HttpStatusFor(ErrorCode code);

}  // namespace metamorph::likert

#endif  // METAMORPH_LIKERT_SERVICE_H_
