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
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "common/text.h"
#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace metamorph::likert {
namespace {

using metamorph::testing::CodeOf;
using metamorph::testing::ReadText;
using metamorph::testing::TempDir;

std::vector<SessionImage> Images(size_t n) {
  std::vector<SessionImage> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back({"img" + std::to_string(i), "gen/img" + std::to_string(i) + ".png"});
  }
  return out;
}

const std::vector<std::string> kScales = {"semantic", "realistic"};

// Monotone fake clock so tests do not depend on wall time.
Store::Clock Counter() {
  auto t = std::make_shared<int64_t>(1000);
  return [t] { return ++*t; };
}

Score S(const Session& s, const std::string& rater, const std::string& image, const std::string& scale,
        int value, int64_t ts = 0) {
  return {s.id, rater, image, scale, value, ts};
}

TEST(LikertStoreTest, SamplingIsSeededAndWithoutReplacement) {
  TempDir a, b;
  Store sa(a.path()), sb(b.path());
  const Session x = sa.CreateSession("TC01", Images(100), kScales, 40, 9);
  const Session y = sb.CreateSession("TC01", Images(100), kScales, 40, 9);
  ASSERT_EQ(x.images.size(), 40u);
  EXPECT_EQ(x.images, y.images);
  std::set<std::string> ids;
  for (const auto& im : x.images) ids.insert(im.id);
  EXPECT_EQ(ids.size(), 40u);

  const Session z = sa.CreateSession("TC01", Images(100), kScales, 40, 10);
  EXPECT_NE(x.images, z.images);
  EXPECT_NE(x.id, z.id);
}

TEST(LikertStoreTest, SamplingCoversPopulationEvenly) {
  // Every image should be drawn about 40/100 of the time over many seeds.
  TempDir dir;
  Store store(dir.path());
  std::map<std::string, int> hits;
  const int kSessions = 200;
  for (int seed = 0; seed < kSessions; ++seed) {
    for (const auto& im : store.CreateSession("T", Images(20), {"q"}, 8, seed).images) ++hits[im.id];
  }
  for (const auto& [id, n] : hits) EXPECT_NEAR(n / double(kSessions), 0.4, 0.15) << id;
  EXPECT_EQ(hits.size(), 20u);
}

TEST(LikertStoreTest, CreateValidation) {
  TempDir dir;
  Store store(dir.path());
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", {}, kScales, 1, 0); }), ErrorCode::kEmptyImageList);
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", Images(10), kScales, 40, 0); }), ErrorCode::kSampleTooLarge);
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", Images(10), kScales, 0, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", Images(10), {"a", "a"}, 2, 0); }),
            ErrorCode::kInvalidArgument);
  auto dup = Images(3);
  dup[2].id = dup[0].id;
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", dup, kScales, 2, 0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([&] { store.CreateSession("T", Images(10), kScales, 10, 0); }), std::nullopt);
}

TEST(LikertStoreTest, RecordValidation) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC02", Images(5), kScales, 3, 1);
  const std::string im = s.images[0].id;
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r", im, "semantic", 0)); }), ErrorCode::kValueOutOfRange);
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r", im, "semantic", 6)); }), ErrorCode::kValueOutOfRange);
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r", im, "beauty", 3)); }), ErrorCode::kUnknownScale);
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r", "nope", "semantic", 3)); }), ErrorCode::kUnknownImage);
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "", im, "semantic", 3)); }), ErrorCode::kInvalidArgument);
  Score unknown = S(s, "r", im, "semantic", 3);
  unknown.session_id = "s999-missing";
  EXPECT_EQ(CodeOf([&] { store.RecordScore(unknown); }), ErrorCode::kUnknownSession);
  // An image that exists in the pool but was not sampled is still unknown.
  std::set<std::string> sampled;
  for (const auto& x : s.images) sampled.insert(x.id);
  for (const auto& x : Images(5)) {
    if (!sampled.count(x.id)) {
      EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r", x.id, "semantic", 3)); }), ErrorCode::kUnknownImage);
    }
  }
  EXPECT_EQ(store.Summarize(s.id).at("semantic").n, 0u);
}

TEST(LikertStoreTest, OneToFiveAggregatesToThreeWithSampleStd) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC01", Images(5), {"semantic"}, 5, 0);
  for (int v = 1; v <= 5; ++v) store.RecordScore(S(s, "r1", s.images[v - 1].id, "semantic", v));
  const ScaleAggregate a = store.Summarize(s.id).at("semantic");
  EXPECT_EQ(a.n, 5u);
  EXPECT_DOUBLE_EQ(a.mean, 3.0);
  EXPECT_NEAR(a.std, std::sqrt(2.5), 1e-12);
  EXPECT_EQ(FormatMeanStd(a.mean, a.std, 2), "3.00(158)");

  const ScaleAggregate pop = store.Summarize(s.id, /*sample_std=*/false).at("semantic");
  EXPECT_NEAR(pop.std, std::sqrt(2.0), 1e-12);
}

TEST(LikertStoreTest, DegenerateAggregates) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC01", Images(3), kScales, 3, 0);
  for (const auto& im : s.images) store.RecordScore(S(s, "r1", im.id, "semantic", 3));
  store.RecordScore(S(s, "r1", s.images[0].id, "realistic", 4));
  const Aggregate a = store.Summarize(s.id);
  EXPECT_DOUBLE_EQ(a.at("semantic").mean, 3.0);
  EXPECT_DOUBLE_EQ(a.at("semantic").std, 0.0);
  EXPECT_EQ(a.at("realistic").n, 1u);
  EXPECT_DOUBLE_EQ(a.at("realistic").std, 0.0);

  const Session empty = store.CreateSession("TC02", Images(3), kScales, 2, 0);
  const Aggregate e = store.Summarize(empty.id);
  EXPECT_EQ(e.at("semantic").n, 0u);
  EXPECT_EQ(e.at("realistic").n, 0u);
}

TEST(LikertStoreTest, LaterScoreOverwrites) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC01", Images(2), {"semantic"}, 2, 0);
  store.RecordScore(S(s, "r1", s.images[0].id, "semantic", 2));
  store.RecordScore(S(s, "r1", s.images[0].id, "semantic", 4));
  const ScaleAggregate a = store.Summarize(s.id).at("semantic");
  EXPECT_EQ(a.n, 1u);
  EXPECT_DOUBLE_EQ(a.mean, 4.0);
}

TEST(LikertStoreTest, TimestampDecidesOverLogOrderAndTiesGoToLaterEntry) {
  TempDir dir;
  Store store(dir.path());
  const Session s = store.CreateSession("TC01", Images(2), {"semantic"}, 2, 0);
  const std::string a = s.images[0].id, b = s.images[1].id;
  store.RecordScore(S(s, "r1", a, "semantic", 5, 200));
  store.RecordScore(S(s, "r1", a, "semantic", 1, 100));  // older, ignored
  store.RecordScore(S(s, "r1", b, "semantic", 2, 300));
  store.RecordScore(S(s, "r1", b, "semantic", 3, 300));  // same time, later entry wins
  const ScaleAggregate agg = store.Summarize(s.id).at("semantic");
  EXPECT_EQ(agg.n, 2u);
  EXPECT_DOUBLE_EQ(agg.mean, 4.0);
}

TEST(LikertStoreTest, AggregateIgnoresArrivalOrderAcrossRaters) {
  // Property: for distinct (rater, image) keys the aggregate does not depend
  // on the order the scores arrive in.
  std::vector<Score> scores;
  TempDir seed_dir;
  Store probe(seed_dir.path());
  const Session s = probe.CreateSession("TC01", Images(6), {"semantic"}, 6, 3);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> value(1, 5);
  for (const char* rater : {"ann", "bo", "cy"}) {
    for (const auto& im : s.images) {
      scores.push_back(S(s, rater, im.id, "semantic", value(rng), 50));
    }
  }
  std::optional<ScaleAggregate> first;
  for (int trial = 0; trial < 10; ++trial) {
    TempDir dir;
    Store store(dir.path());
    const Session t = store.CreateSession("TC01", Images(6), {"semantic"}, 6, 3);
    ASSERT_EQ(t.id, s.id);
    auto order = scores;
    std::shuffle(order.begin(), order.end(), rng);
    for (const auto& sc : order) store.RecordScore(sc);
    const ScaleAggregate a = store.Summarize(t.id).at("semantic");
    if (!first) {
      first = a;
      continue;
    }
    EXPECT_EQ(a.n, first->n);
    EXPECT_NEAR(a.mean, first->mean, 1e-12);
    EXPECT_NEAR(a.std, first->std, 1e-12);
  }
  EXPECT_EQ(first->n, 18u);
}

TEST(LikertStoreTest, ClosedSessionRejectsScoresAndKeepsAggregate) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC01", Images(3), {"semantic"}, 3, 0);
  store.RecordScore(S(s, "r1", s.images[0].id, "semantic", 2));
  store.RecordScore(S(s, "r1", s.images[1].id, "semantic", 5));
  const ScaleAggregate before = store.Summarize(s.id).at("semantic");
  store.Close(s.id);
  store.Close(s.id);  // idempotent
  EXPECT_EQ(store.Get(s.id).status, Status::kClosed);
  EXPECT_EQ(CodeOf([&] { store.RecordScore(S(s, "r1", s.images[2].id, "semantic", 1)); }),
            ErrorCode::kSessionClosed);
  const ScaleAggregate after = store.Summarize(s.id).at("semantic");
  EXPECT_EQ(after.n, before.n);
  EXPECT_EQ(after.mean, before.mean);
  EXPECT_EQ(after.std, before.std);
}

TEST(LikertStoreTest, NextWalksImagesThenScales) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session s = store.CreateSession("TC01", Images(4), kScales, 2, 0);
  auto p = store.Next(s.id, "r1");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->image, s.images[0].id);
  EXPECT_EQ(p->scale, "semantic");
  EXPECT_EQ(p->total, 4u);
  store.RecordScore(S(s, "r1", p->image, p->scale, 3));
  p = store.Next(s.id, "r1");
  EXPECT_EQ(p->image, s.images[0].id);
  EXPECT_EQ(p->scale, "realistic");
  EXPECT_EQ(p->scored, 1u);
  // Another rater has their own queue.
  EXPECT_EQ(store.Next(s.id, "r2")->scored, 0u);
  for (const auto& im : s.images) {
    for (const auto& sc : kScales) store.RecordScore(S(s, "r1", im.id, sc, 4));
  }
  EXPECT_FALSE(store.Next(s.id, "r1"));
  EXPECT_EQ(store.RaterProgress(s.id, "r1").scored, 4u);
  EXPECT_EQ(store.Raters(s.id), (std::vector<std::string>{"r1"}));
}

TEST(LikertStoreTest, RestartRestoresSessionsAndScores) {
  TempDir dir;
  std::string id;
  Aggregate before;
  {
    Store store(dir.path(), Counter());
    const Session s = store.CreateSession("TC03", Images(6), kScales, 4, 2);
    id = s.id;
    for (size_t i = 0; i < s.images.size(); ++i) {
      store.RecordScore(S(s, "r1", s.images[i].id, "semantic", 1 + static_cast<int>(i)));
      store.RecordScore(S(s, "r2", s.images[i].id, "realistic", 5 - static_cast<int>(i)));
    }
    store.RecordScore(S(s, "r1", s.images[0].id, "semantic", 5));
    store.Close(id);
    store.CreateSession("TC04", Images(3), kScales, 3, 0);
    before = store.Summarize(id);
  }
  const std::string header = ReadText(dir.path() / id / "session.json");
  const std::string log = ReadText(dir.path() / id / "scores.jsonl");

  Store reopened(dir.path(), Counter());
  ASSERT_EQ(reopened.Sessions().size(), 2u);
  const Session s = reopened.Get(id);
  EXPECT_EQ(s.status, Status::kClosed);
  const Aggregate after = reopened.Summarize(id);
  for (const auto& scale : kScales) {
    EXPECT_EQ(after.at(scale).n, before.at(scale).n);
    EXPECT_EQ(after.at(scale).mean, before.at(scale).mean);
    EXPECT_EQ(after.at(scale).std, before.at(scale).std);
  }
  EXPECT_EQ(ReadText(dir.path() / id / "session.json"), header);
  EXPECT_EQ(ReadText(dir.path() / id / "scores.jsonl"), log);
  EXPECT_EQ(AggregateToJson(after).dump(), AggregateToJson(before).dump());

  // New sessions do not reuse an existing id.
  const Session fresh = reopened.CreateSession("TC03", Images(6), kScales, 4, 2);
  EXPECT_NE(fresh.id, id);
}

TEST(LikertStoreTest, SummarizeTestCasePoolsSessions) {
  TempDir dir;
  Store store(dir.path(), Counter());
  const Session a = store.CreateSession("TC05", Images(2), {"semantic"}, 2, 0);
  const Session b = store.CreateSession("TC05", Images(2), {"semantic"}, 2, 1);
  const Session other = store.CreateSession("TC06", Images(2), {"semantic"}, 2, 0);
  store.RecordScore(S(a, "r1", a.images[0].id, "semantic", 1));
  store.RecordScore(S(b, "r1", b.images[0].id, "semantic", 5));
  store.RecordScore(S(other, "r1", other.images[0].id, "semantic", 2));
  const ScaleAggregate pooled = store.SummarizeTestCase("TC05").at("semantic");
  EXPECT_EQ(pooled.n, 2u);
  EXPECT_DOUBLE_EQ(pooled.mean, 3.0);
  EXPECT_TRUE(store.SummarizeTestCase("TC99").empty());
}

TEST(LikertStoreTest, ImagePathLookup) {
  TempDir dir;
  Store store(dir.path());
  const Session s = store.CreateSession("TC01", Images(3), {"semantic"}, 3, 0);
  EXPECT_EQ(store.ImagePath("img1"), "gen/img1.png");
  EXPECT_EQ(store.ImagePath("img1", s.id), "gen/img1.png");
  EXPECT_FALSE(store.ImagePath("img9"));
}

TEST(LikertStoreTest, SessionJsonRoundTrip) {
  Session s{"s001-TC01", "TC01", {{"a", "x/a.png"}, {"b", "x/b.png"}}, {"semantic"}, 77, Status::kClosed};
  EXPECT_EQ(SessionFromJson(SessionToJson(s)), s);
}

}  // namespace
}  // namespace metamorph::likert
