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

#include "likert/store.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "common/error.h"
#include "common/rng.h"
#include "common/summation.h"
#include "common/text.h"

namespace metamorph::likert {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kHeaderFile = "session.json";
constexpr const char* kScoresFile = "scores.jsonl";

int64_t WallClockMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string Slug(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? "session" : out;
}

json ScoreToJson(const Score& s) {
  return {{"rater", s.rater}, {"image", s.image}, {"scale", s.scale}, {"value", s.value}, {"timestamp", s.timestamp_ms}};
}

}  // namespace

std::string_view StatusName(Status s) { return s == Status::kOpen ? "open" : "closed"; }

json SessionToJson(const Session& s) {
  json images = json::array();
  for (const auto& im : s.images) images.push_back({{"id", im.id}, {"path", im.path}});
  return {{"id", s.id},         {"test_case", s.test_case}, {"images", images},
          {"scales", s.scales}, {"seed", s.seed},           {"status", StatusName(s.status)}};
}

Session SessionFromJson(const json& j) {
  Session s;
  s.id = j.at("id").get<std::string>();
  s.test_case = j.at("test_case").get<std::string>();
  for (const auto& im : j.at("images")) s.images.push_back({im.at("id").get<std::string>(), im.at("path").get<std::string>()});
  s.scales = j.at("scales").get<std::vector<std::string>>();
  s.seed = j.at("seed").get<uint64_t>();
  s.status = j.at("status").get<std::string>() == "closed" ? Status::kClosed : Status::kOpen;
  return s;
}

json AggregateToJson(const Aggregate& a) {
  json j = json::object();
  for (const auto& [scale, agg] : a) {
    j[scale] = {{"mean", agg.mean}, {"std", agg.std}, {"n", agg.n}};
  }
  return j;
}

// Per-session state. `mu` serialises writers; readers copy under it.
struct Store::State {
  mutable std::mutex mu;
  Session session;
  std::vector<Score> log;  // in append order
  fs::path dir;
};

Store::Store(fs::path dir, Clock clock) : dir_(std::move(dir)), clock_(std::move(clock)) {
  if (!clock_) clock_ = WallClockMs;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + dir_.string());
  Load();
}

Store::~Store() = default;

void Store::Load() {
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (e.is_directory() && fs::is_regular_file(e.path() / kHeaderFile)) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& d : dirs) {
    auto state = std::make_shared<State>();
    state->dir = d;
    try {
      state->session = SessionFromJson(json::parse(ReadFile(d / kHeaderFile)));
      if (fs::exists(d / kScoresFile)) {
        std::ifstream in(d / kScoresFile);
        std::string line;
        while (std::getline(in, line)) {
          if (Trim(line).empty()) continue;
          const json j = json::parse(line);
          state->log.push_back({state->session.id, j.at("rater").get<std::string>(), j.at("image").get<std::string>(),
                                j.at("scale").get<std::string>(), j.at("value").get<int>(),
                                j.at("timestamp").get<int64_t>()});
        }
      }
    } catch (const json::exception& e) {
      Fail(ErrorCode::kInvalidConfig, "corrupt session in " + d.string() + ": " + e.what());
    }
    order_.push_back(state->session.id);
    sessions_.emplace(state->session.id, std::move(state));
  }
}

std::shared_ptr<Store::State> Store::Find(const std::string& id) const {
  std::shared_lock lock(map_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) Fail(ErrorCode::kUnknownSession, id);
  return it->second;
}

Session Store::CreateSession(const std::string& test_case, const std::vector<SessionImage>& images,
                             const std::vector<std::string>& scales, size_t sample_size, uint64_t seed) {
  if (images.empty()) Fail(ErrorCode::kEmptyImageList, "session for " + test_case);
  if (sample_size > images.size()) {
    Fail(ErrorCode::kSampleTooLarge, std::to_string(sample_size) + " of " + std::to_string(images.size()));
  }
  if (sample_size == 0) Fail(ErrorCode::kInvalidArgument, "sample_size must be >= 1");
  if (scales.empty()) Fail(ErrorCode::kInvalidArgument, "at least one scale required");
  std::set<std::string> unique_scales(scales.begin(), scales.end());
  if (unique_scales.size() != scales.size()) Fail(ErrorCode::kInvalidArgument, "duplicate scale names");
  std::set<std::string> unique_ids;
  for (const auto& im : images) {
    if (!unique_ids.insert(im.id).second) Fail(ErrorCode::kInvalidArgument, "duplicate image id " + im.id);
  }

  // Partial Fisher-Yates: the first sample_size slots are a uniform sample in
  // random order.
  std::vector<SessionImage> pool = images;
  Rng rng(DeriveSeed(seed, "likert:" + test_case));
  for (size_t i = 0; i < sample_size; ++i) {
    const size_t j = i + rng.UniformBelow(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(sample_size);

  auto state = std::make_shared<State>();
  state->session.test_case = test_case;
  state->session.images = std::move(pool);
  state->session.scales = scales;
  state->session.seed = seed;
  {
    std::unique_lock lock(map_mu_);
    size_t n = order_.size() + 1;
    std::string id;
    do {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "s%03zu-", n++);
      id = buf + Slug(test_case);
    } while (sessions_.count(id));
    state->session.id = id;
    state->dir = dir_ / id;
    fs::create_directories(state->dir);
    WriteFileAtomic(state->dir / kHeaderFile, SessionToJson(state->session).dump(2) + "\n");
    WriteFile(state->dir / kScoresFile, "");
    order_.push_back(id);
    sessions_.emplace(id, state);
  }
  return state->session;
}

void Store::RecordScore(Score score) {
  auto state = Find(score.session_id);
  std::lock_guard lock(state->mu);
  const Session& s = state->session;
  if (s.status == Status::kClosed) Fail(ErrorCode::kSessionClosed, s.id);
  if (score.value < kMinScore || score.value > kMaxScore) {
    Fail(ErrorCode::kValueOutOfRange, std::to_string(score.value) + " not in 1..5");
  }
  if (std::find(s.scales.begin(), s.scales.end(), score.scale) == s.scales.end()) {
    Fail(ErrorCode::kUnknownScale, score.scale);
  }
  if (std::none_of(s.images.begin(), s.images.end(), [&](const auto& im) { return im.id == score.image; })) {
    Fail(ErrorCode::kUnknownImage, score.image);
  }
  if (score.rater.empty()) Fail(ErrorCode::kInvalidArgument, "rater token required");
  if (score.timestamp_ms == 0) score.timestamp_ms = clock_();
  std::ofstream out(state->dir / kScoresFile, std::ios::app | std::ios::binary);
  out << ScoreToJson(score).dump() << '\n';
  out.flush();
  if (!out) Fail(ErrorCode::kIoFailure, "append to " + (state->dir / kScoresFile).string());
  state->log.push_back(std::move(score));
}

void Store::Close(const std::string& session_id) {
  auto state = Find(session_id);
  std::lock_guard lock(state->mu);
  if (state->session.status == Status::kClosed) return;
  Session closed = state->session;
  closed.status = Status::kClosed;
  WriteFileAtomic(state->dir / kHeaderFile, SessionToJson(closed).dump(2) + "\n");
  state->session = std::move(closed);
}

namespace {

using Key = std::tuple<std::string, std::string, std::string>;  // rater, image, scale

// Latest score per key: highest timestamp, later log position on ties.
std::map<Key, int> Effective(const std::vector<Score>& log) {
  std::map<Key, std::pair<int64_t, int>> best;
  for (const auto& s : log) {
    Key k{s.rater, s.image, s.scale};
    auto it = best.find(k);
    if (it == best.end() || s.timestamp_ms >= it->second.first) best[k] = {s.timestamp_ms, s.value};
  }
  std::map<Key, int> out;
  for (const auto& [k, v] : best) out.emplace(k, v.second);
  return out;
}

}  // namespace

namespace {

Aggregate Pool(const std::map<std::string, std::vector<int>>& values, const std::vector<std::string>& scales,
               bool sample_std) {
  Aggregate out;
  for (const auto& scale : scales) {
    ScaleAggregate agg;
    auto it = values.find(scale);
    if (it != values.end() && !it->second.empty()) {
      const auto& vs = it->second;
      agg.n = vs.size();
      CompensatedSum sum;
      for (int v : vs) sum.Add(v);
      agg.mean = sum.value() / static_cast<double>(vs.size());
      if (vs.size() > 1) {
        CompensatedSum sq;
        for (int v : vs) sq.Add((v - agg.mean) * (v - agg.mean));
        const size_t dof = sample_std ? vs.size() - 1 : vs.size();
        agg.std = std::sqrt(sq.value() / static_cast<double>(dof));
      }
    }
    out[scale] = agg;
  }
  return out;
}

}  // namespace

Aggregate Store::Summarize(const std::string& session_id, bool sample_std) const {
  auto state = Find(session_id);
  std::vector<Score> log;
  std::vector<std::string> scales;
  {
    std::lock_guard lock(state->mu);
    log = state->log;
    scales = state->session.scales;
  }
  std::map<std::string, std::vector<int>> values;
  for (const auto& [key, v] : Effective(log)) values[std::get<2>(key)].push_back(v);
  return Pool(values, scales, sample_std);
}

Aggregate Store::SummarizeTestCase(const std::string& test_case, bool sample_std) const {
  std::vector<std::shared_ptr<State>> states;
  {
    std::shared_lock lock(map_mu_);
    for (const auto& id : order_) states.push_back(sessions_.at(id));
  }
  std::map<std::string, std::vector<int>> values;
  std::vector<std::string> scales;
  for (const auto& st : states) {
    std::vector<Score> log;
    {
      std::lock_guard lock(st->mu);
      if (st->session.test_case != test_case) continue;
      log = st->log;
      for (const auto& s : st->session.scales) {
        if (std::find(scales.begin(), scales.end(), s) == scales.end()) scales.push_back(s);
      }
    }
    for (const auto& [key, v] : Effective(log)) values[std::get<2>(key)].push_back(v);
  }
  return Pool(values, scales, sample_std);
}

std::optional<Prompt> Store::Next(const std::string& session_id, const std::string& rater) const {
  auto state = Find(session_id);
  std::lock_guard lock(state->mu);
  const Session& s = state->session;
  std::set<std::pair<std::string, std::string>> done;
  for (const auto& sc : state->log) {
    if (sc.rater == rater) done.emplace(sc.image, sc.scale);
  }
  const size_t total = s.images.size() * s.scales.size();
  for (const auto& im : s.images) {
    for (const auto& scale : s.scales) {
      if (!done.count({im.id, scale})) return Prompt{im.id, scale, done.size(), total};
    }
  }
  return std::nullopt;
}

Progress Store::RaterProgress(const std::string& session_id, const std::string& rater) const {
  auto state = Find(session_id);
  std::lock_guard lock(state->mu);
  std::set<std::pair<std::string, std::string>> done;
  for (const auto& sc : state->log) {
    if (sc.rater == rater) done.emplace(sc.image, sc.scale);
  }
  return {done.size(), state->session.images.size() * state->session.scales.size()};
}

Session Store::Get(const std::string& session_id) const {
  auto state = Find(session_id);
  std::lock_guard lock(state->mu);
  return state->session;
}

std::vector<Session> Store::Sessions() const {
  std::vector<std::shared_ptr<State>> states;
  {
    std::shared_lock lock(map_mu_);
    for (const auto& id : order_) states.push_back(sessions_.at(id));
  }
  std::vector<Session> out;
  for (const auto& st : states) {
    std::lock_guard lock(st->mu);
    out.push_back(st->session);
  }
  return out;
}

std::vector<std::string> Store::Raters(const std::string& session_id) const {
  auto state = Find(session_id);
  std::lock_guard lock(state->mu);
  std::set<std::string> raters;
  for (const auto& sc : state->log) raters.insert(sc.rater);
  return {raters.begin(), raters.end()};
}

std::optional<std::string> Store::ImagePath(const std::string& image_id, const std::string& session_id) const {
  std::vector<Session> candidates;
  if (!session_id.empty()) {
    candidates.push_back(Get(session_id));
  } else {
    candidates = Sessions();
  }
  for (const auto& s : candidates) {
    for (const auto& im : s.images) {
      if (im.id == image_id) return im.path;
    }
  }
  return std::nullopt;
}

}  // namespace metamorph::likert
