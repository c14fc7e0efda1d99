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

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

#include "common/error.h"
#include "common/text.h"
#include "image/codec.h"

namespace metamorph {

namespace fs = std::filesystem;

double IntersectionArea(const BoundingBox& a, const BoundingBox& b) {
  const double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0 || iy <= 0) return 0.0;
  return ix * iy;
}

double IoU(const BoundingBox& a, const BoundingBox& b) {
  const double inter = IntersectionArea(a, b);
  if (inter == 0.0) return 0.0;
  return inter / (a.area() + b.area() - inter);
}

AnnotatedDataset::AnnotatedDataset(fs::path root, std::vector<ImageRecord> images,
                                   std::map<std::string, std::string> classes)
    : root_(std::move(root)), images_(std::move(images)), classes_(std::move(classes)) {
  for (size_t i = 0; i < images_.size(); ++i) index_.emplace(images_[i].id, i);
}

const ImageRecord* AnnotatedDataset::Find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &images_[it->second];
}

fs::path AnnotatedDataset::ImagePath(const ImageRecord& rec) const {
  return root_ / kImagesDir / rec.relative_path;
}

RgbImage AnnotatedDataset::LoadPixels(const std::string& id) const {
  const ImageRecord* rec = Find(id);
  if (!rec) Fail(ErrorCode::kDanglingReference, "image " + id);
  return ReadRgb(ImagePath(*rec));
}

size_t AnnotatedDataset::CountSplit(Split which) const {
  return static_cast<size_t>(std::count_if(images_.begin(), images_.end(),
                                           [which](const auto& r) { return r.split == which; }));
}

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

// Whitespace table: blank lines are skipped, every other line must carry
// exactly `arity` tokens.
std::vector<Line> ReadTable(const fs::path& file, const std::string& contents, size_t arity) {
  std::vector<Line> out;
  std::string_view rest = contents;
  int number = 0;
  while (!rest.empty()) {
    const size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++number;
    auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != arity) {
      Fail(ErrorCode::kMalformedLine,
           file.filename().string() + ":" + std::to_string(number) + ": expected " +
               std::to_string(arity) + " fields");
    }
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

[[noreturn]] void Malformed(const char* file, int line, const std::string& what) {
  Fail(ErrorCode::kMalformedLine, std::string(file) + ":" + std::to_string(line) + ": " + what);
}

std::string Require(const fs::path& root, const char* name) {
  const fs::path p = root / name;
  if (!fs::is_regular_file(p)) Fail(ErrorCode::kMissingFile, p.string());
  return ReadFile(p);
}

}  // namespace

AnnotatedDataset LoadDataset(const fs::path& root) {
  if (!fs::is_directory(root)) Fail(ErrorCode::kMissingFile, root.string());
  // Read everything first so a missing file is reported before parse errors.
  const std::string images_txt = Require(root, kImagesFile);
  const std::string boxes_txt = Require(root, kBoxesFile);
  const std::string classes_txt = Require(root, kClassesFile);
  const std::string labels_txt = Require(root, kLabelsFile);
  const std::string split_txt = Require(root, kSplitFile);

  std::map<std::string, std::string> classes;
  for (const auto& line : ReadTable(root / kClassesFile, classes_txt, 2)) {
    if (!classes.emplace(std::string(line.tokens[0]), std::string(line.tokens[1])).second) {
      Malformed(kClassesFile, line.number, "duplicate class id");
    }
  }

  std::vector<ImageRecord> images;
  std::unordered_map<std::string, size_t> index;
  for (const auto& line : ReadTable(root / kImagesFile, images_txt, 2)) {
    ImageRecord rec;
    rec.id = std::string(line.tokens[0]);
    rec.relative_path = std::string(line.tokens[1]);
    if (!index.emplace(rec.id, images.size()).second) {
      Malformed(kImagesFile, line.number, "duplicate image id " + rec.id);
    }
    images.push_back(std::move(rec));
  }

  auto lookup = [&](std::string_view id) -> ImageRecord& {
    auto it = index.find(std::string(id));
    if (it == index.end()) Fail(ErrorCode::kDanglingReference, std::string(id));
    return images[it->second];
  };

  std::vector<bool> has_box(images.size()), has_label(images.size()), has_split(images.size());
  for (const auto& line : ReadTable(root / kBoxesFile, boxes_txt, 5)) {
    ImageRecord& rec = lookup(line.tokens[0]);
    const size_t i = index.at(rec.id);
    if (has_box[i]) Malformed(kBoxesFile, line.number, "second bounding box for " + rec.id);
    double v[4];
    for (int k = 0; k < 4; ++k) {
      auto d = ParseDouble(line.tokens[k + 1]);
      if (!d) Malformed(kBoxesFile, line.number, "bad number");
      v[k] = *d;
    }
    if (v[2] <= 0 || v[3] <= 0) Malformed(kBoxesFile, line.number, "non-positive box size");
    rec.focal_bbox = {v[0], v[1], v[2], v[3]};
    has_box[i] = true;
  }
  for (const auto& line : ReadTable(root / kLabelsFile, labels_txt, 2)) {
    ImageRecord& rec = lookup(line.tokens[0]);
    const size_t i = index.at(rec.id);
    if (has_label[i]) Malformed(kLabelsFile, line.number, "second label for " + rec.id);
    const std::string cls(line.tokens[1]);
    if (!classes.count(cls)) Fail(ErrorCode::kDanglingReference, "class " + cls);
    rec.class_id = cls;
    has_label[i] = true;
  }
  for (const auto& line : ReadTable(root / kSplitFile, split_txt, 2)) {
    ImageRecord& rec = lookup(line.tokens[0]);
    const size_t i = index.at(rec.id);
    if (has_split[i]) Malformed(kSplitFile, line.number, "second split entry for " + rec.id);
    if (line.tokens[1] == "1") {
      rec.split = Split::kTrain;
    } else if (line.tokens[1] == "0") {
      rec.split = Split::kTest;
    } else {
      Malformed(kSplitFile, line.number, "split flag must be 0 or 1");
    }
    has_split[i] = true;
  }

  for (size_t i = 0; i < images.size(); ++i) {
    ImageRecord& rec = images[i];
    if (!has_box[i]) Fail(ErrorCode::kMissingAnnotation, "no bounding box for image " + rec.id);
    if (!has_label[i]) Fail(ErrorCode::kMissingAnnotation, "no class label for image " + rec.id);
    if (!has_split[i]) Fail(ErrorCode::kMissingAnnotation, "no split entry for image " + rec.id);
    const fs::path path = root / kImagesDir / rec.relative_path;
    if (!fs::is_regular_file(path)) Fail(ErrorCode::kMissingFile, path.string());
    const ImageInfo info = ProbeImage(path);
    rec.width = info.width;
    rec.height = info.height;
    if (rec.width <= 0 || rec.height <= 0) Fail(ErrorCode::kIoFailure, "empty image " + path.string());
    const BoundingBox& b = rec.focal_bbox;
    if (b.x < 0 || b.y < 0 || b.x + b.w > rec.width || b.y + b.h > rec.height) {
      std::ostringstream msg;
      msg << "image " << rec.id << " box (" << b.x << "," << b.y << "," << b.w << "," << b.h
          << ") exceeds " << rec.width << "x" << rec.height;
      Fail(ErrorCode::kBBoxOutOfBounds, msg.str());
    }
  }
  return AnnotatedDataset(root, std::move(images), std::move(classes));
}

AnnotatedDataset SubsetBySplit(const AnnotatedDataset& ds, Split which) {
  std::vector<ImageRecord> kept;
  for (const auto& rec : ds.images()) {
    if (rec.split == which) kept.push_back(rec);
  }
  return AnnotatedDataset(ds.root(), std::move(kept), ds.classes());
}

}  // namespace metamorph
