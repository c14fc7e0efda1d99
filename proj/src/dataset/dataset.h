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

#ifndef METAMORPH_DATASET_DATASET_H_
#define METAMORPH_DATASET_DATASET_H_

#include <filesystem>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "image/raster.h"

namespace metamorph {

// Pixel rectangle, top-left origin. Coordinates stay as read from the
// annotation files (CUB stores floats); rounding happens only when a box is
// rasterised.
struct BoundingBox {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;

  double area() const { return w * h; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

double IntersectionArea(const BoundingBox& a, const BoundingBox& b);
double IoU(const BoundingBox& a, const BoundingBox& b);

enum class Split { kTrain, kTest };

struct ImageRecord {
  std::string id;
  std::string relative_path;  // as listed in images.txt, relative to images/
  int width = 0;
  int height = 0;
  BoundingBox focal_bbox;
  std::string class_id;
  Split split = Split::kTrain;

  friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

// Immutable view of a CUB-style dataset. Metadata is loaded eagerly; pixels
// are decoded on demand by LoadPixels. Safe for concurrent readers.
class AnnotatedDataset {
 public:
  AnnotatedDataset() = default;
  AnnotatedDataset(std::filesystem::path root, std::vector<ImageRecord> images,
                   std::map<std::string, std::string> classes);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<ImageRecord>& images() const { return images_; }
  const std::map<std::string, std::string>& classes() const { return classes_; }
  size_t size() const { return images_.size(); }

  // nullptr when absent.
  const ImageRecord* Find(const std::string& id) const;

  std::filesystem::path ImagePath(const ImageRecord& rec) const;
  RgbImage LoadPixels(const std::string& id) const;

  size_t CountSplit(Split which) const;

  friend bool operator==(const AnnotatedDataset& a, const AnnotatedDataset& b) {
    return a.root_ == b.root_ && a.images_ == b.images_ && a.classes_ == b.classes_;
  }

 private:
  std::filesystem::path root_;
  std::vector<ImageRecord> images_;
  std::map<std::string, std::string> classes_;
  std::unordered_map<std::string, size_t> index_;
};

// Annotation file names inside a dataset root.
inline constexpr const char* kImagesFile = "images.txt";
inline constexpr const char* kBoxesFile = "bounding_boxes.txt";
inline constexpr const char* kClassesFile = "classes.txt";
inline constexpr const char* kLabelsFile = "image_class_labels.txt";
inline constexpr const char* kSplitFile = "train_test_split.txt";
inline constexpr const char* kImagesDir = "images";

AnnotatedDataset LoadDataset(const std::filesystem::path& root);

AnnotatedDataset SubsetBySplit(const AnnotatedDataset& ds, Split which);

}  // namespace metamorph

#endif  // METAMORPH_DATASET_DATASET_H_
