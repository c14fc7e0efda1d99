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

#include "dataset/dataset.h"

#include "common/error.h"
#include "dataset/synthetic.h"
#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace metamorph {
namespace {

using testing::TempDir;
using testing::WriteText;
using testing::WriteTinyDataset;

ErrorCode LoadError(const std::filesystem::path& root, std::string* message = nullptr) {
  try {
    LoadDataset(root);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "dataset loaded";
  return ErrorCode::kInvalidArgument;
}

TEST(LoadDatasetTest, LoadsTinyFixture) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  const AnnotatedDataset ds = LoadDataset(dir.path());
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds.classes().size(), 2u);
  EXPECT_EQ(ds.CountSplit(Split::kTrain), 2u);
  EXPECT_EQ(ds.CountSplit(Split::kTest), 1u);
  const ImageRecord* rec = ds.Find("3");
  ASSERT_NE(rec, nullptr);
  EXPECT_EQ(rec->relative_path, "002.Beta/b_3.png");
  EXPECT_EQ(rec->width, 40);
  EXPECT_EQ(rec->height, 30);
  EXPECT_DOUBLE_EQ(rec->focal_bbox.x, 5.5);
  EXPECT_DOUBLE_EQ(rec->focal_bbox.h, 15.0);
  EXPECT_EQ(rec->class_id, "2");
  EXPECT_EQ(rec->split, Split::kTest);
  EXPECT_EQ(ds.Find("4"), nullptr);
  EXPECT_EQ(ds.LoadPixels("1"), testing::Solid(40, 30, 200, 40, 40));
}

TEST(LoadDatasetTest, ReloadIsEqual) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  EXPECT_EQ(LoadDataset(dir.path()), LoadDataset(dir.path()));
}

TEST(LoadDatasetTest, MissingFile) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  std::filesystem::remove(dir / "train_test_split.txt");
  EXPECT_EQ(LoadError(dir.path()), ErrorCode::kMissingFile);
}

TEST(LoadDatasetTest, MissingImageFile) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  std::filesystem::remove(dir / "images/002.Beta/b_3.png");
  EXPECT_EQ(LoadError(dir.path()), ErrorCode::kMissingFile);
}

TEST(LoadDatasetTest, MalformedLineNamesFileAndLine) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  WriteText(dir / "bounding_boxes.txt", "1 10 8 12 10\n2 0 0 forty 30\n3 5.5 4.5 20 15\n");
  std::string msg;
  EXPECT_EQ(LoadError(dir.path(), &msg), ErrorCode::kMalformedLine);
  EXPECT_NE(msg.find("bounding_boxes.txt:2"), std::string::npos) << msg;
}

TEST(LoadDatasetTest, DanglingReference) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  WriteText(dir / "image_class_labels.txt", "1 1\n2 1\n3 2\n9 1\n");
  std::string msg;
  EXPECT_EQ(LoadError(dir.path(), &msg), ErrorCode::kDanglingReference);
  EXPECT_NE(msg.find('9'), std::string::npos) << msg;
}

TEST(LoadDatasetTest, UnknownClass) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  WriteText(dir / "image_class_labels.txt", "1 1\n2 1\n3 7\n");
  EXPECT_EQ(LoadError(dir.path()), ErrorCode::kDanglingReference);
}

TEST(LoadDatasetTest, MissingAnnotation) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  WriteText(dir / "bounding_boxes.txt", "1 10 8 12 10\n3 5.5 4.5 20 15\n");
  EXPECT_EQ(LoadError(dir.path()), ErrorCode::kMissingAnnotation);
}

TEST(LoadDatasetTest, BoxOutOfBounds) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  WriteText(dir / "bounding_boxes.txt", "1 10 8 12 10\n2 30 0 11 30\n3 5.5 4.5 20 15\n");
  EXPECT_EQ(LoadError(dir.path()), ErrorCode::kBBoxOutOfBounds);
}

TEST(LoadDatasetTest, SubsetBySplit) {
  TempDir dir;
  WriteTinyDataset(dir.path());
  const AnnotatedDataset train = SubsetBySplit(LoadDataset(dir.path()), Split::kTrain);
  ASSERT_EQ(train.size(), 2u);
  EXPECT_EQ(train.images()[0].id, "1");
  EXPECT_EQ(train.images()[1].id, "2");
}

TEST(SyntheticDatasetTest, LoadsAndIsDeterministic) {
  TempDir a, b;
  SyntheticOptions opts;
  opts.n_images = 12;
  opts.n_classes = 3;
  opts.test_fraction = 0.25;
  WriteSyntheticDataset(a.path(), opts);
  WriteSyntheticDataset(b.path(), opts);
  const AnnotatedDataset ds = LoadDataset(a.path());
  EXPECT_EQ(ds.size(), 12u);
  EXPECT_EQ(ds.classes().size(), 3u);
  EXPECT_EQ(ds.CountSplit(Split::kTest), 3u);
  for (const auto& rec : ds.images()) {
    EXPECT_EQ(testing::ReadText(a / ("images/" + rec.relative_path)),
              testing::ReadText(b / ("images/" + rec.relative_path)));
  }
}

TEST(BoxTest, IntersectionAndIoU) {
  const BoundingBox a{0, 0, 10, 10}, b{5, 5, 10, 10}, c{20, 20, 1, 1};
  EXPECT_DOUBLE_EQ(IntersectionArea(a, b), 25.0);
  EXPECT_DOUBLE_EQ(IoU(a, b), 25.0 / 175.0);
  EXPECT_DOUBLE_EQ(IoU(a, c), 0.0);
  EXPECT_DOUBLE_EQ(IoU(a, a), 1.0);
  // Touching edges do not overlap.
  EXPECT_DOUBLE_EQ(IoU(a, BoundingBox{10, 0, 5, 5}), 0.0);
}

}  // namespace
}  // namespace metamorph
