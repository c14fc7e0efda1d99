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

#ifndef METAMORPH_LIKERT_STORE_H_
#define METAMORPH_LIKERT_STORE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace metamorph::likert {

inline constexpr int kMinScore = 1;  // very poor
inline constexpr int kMaxScore = 5;  // excellent
inline constexpr size_t kDefaultSampleSize = 40;

enum class Status { kOpen, kClosed };

struct SessionImage {
  std::string id;
  std::string path;

  friend bool operator==(const SessionImage&, const SessionImage&) = default;
};

struct Session {
  std::string id;
  std::string test_case;
  std::vector<SessionImage> images;  // sampled, in presentation order
  std::vector<std::string> scales;
  uint64_t seed = 0;
  Status status = Status::kOpen;

  friend bool operator==(const Session&, const Session&) = default;
};

struct Score {
  std::string session_id;
  std::string rater;
  std::string image;
  std::string scale;
  int value = 0;
  int64_t timestamp_ms = 0;  // 0: stamped by the store clock
};

struct ScaleAggregate {
  double mean = 0.0;
  double std = 0.0;
  size_t n = 0;  // 0 means no data yet
};

using Aggregate = std::map<std::string, ScaleAggregate>;

struct Prompt {
  std::string image;
  std::string scale;
  size_t scored = 0;
  size_t total = 0;
};

struct Progress {
  size_t scored = 0;
  size_t total = 0;
};

// Sessions persisted under `dir/<session-id>/`: session.json holds the header
// and scores.jsonl is an append-only log, one score per line. Later scores
// for the same (rater, image, scale) win by timestamp, then by log order.
// Writes to one session are serialised; different sessions are independent.
class Store {
 public:
  using Clock = std::function<int64_t()>;

  explicit Store(std::filesystem::path dir, Clock clock = {});
  ~Store();

  // Samples `sample_size` images uniformly without replacement, in seeded
  // random order. Throws EmptyImageList, SampleTooLarge.
  Session CreateSession(const std::string& test_case, const std::vector<SessionImage>& images,
                        const std::vector<std::string>& scales, size_t sample_size, uint64_t seed);

  // Throws UnknownSession, SessionClosed, ValueOutOfRange, UnknownScale,
  // UnknownImage.
  void RecordScore(Score score);

  void Close(const std::string& session_id);

  // Pooled over raters and images; sample std (population when
  // `sample_std` is false), 0 for n <= 1.
  Aggregate Summarize(const std::string& session_id, bool sample_std = true) const;

  // Pools the effective scores of every session for `test_case`.
  Aggregate SummarizeTestCase(const std::string& test_case, bool sample_std = true) const;

  std::optional<Prompt> Next(const std::string& session_id, const std::string& rater) const;
  Progress RaterProgress(const std::string& session_id, const std::string& rater) const;

  Session Get(const std::string& session_id) const;
  std::vector<Session> Sessions() const;
  std::vector<std::string> Raters(const std::string& session_id) const;

  // Path of `image_id` within a session, or the first session holding it.
  std::optional<std::string> ImagePath(const std::string& image_id,
                                       const std::string& session_id = {}) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  struct State;

  std::shared_ptr<State> Find(const std::string& id) const;
  void Load();

  std::filesystem::path dir_;
  Clock clock_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::shared_ptr<State>> sessions_;
  std::vector<std::string> order_;
};

nlohmann::json SessionToJson(const Session& s);
Session SessionFromJson(const nlohmann::json& j);
nlohmann::json AggregateToJson(const Aggregate& a);
std::string_view StatusName(Status s);

}  // namespace metamorph::likert

#endif  // METAMORPH_LIKERT_STORE_H_
