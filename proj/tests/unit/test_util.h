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

#ifndef METAMORPH_TESTS_UNIT_TEST_UTIL_H_
#define METAMORPH_TESTS_UNIT_TEST_UTIL_H_

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "common/error.h"
#include "gtest/gtest.h"
#include "image/codec.h"
#include "image/raster.h"

namespace metamorph::testing {

// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    std::string name = info ? std::string(info->test_suite_name()) + "." + info->name() : "mm";
    for (char& c : name) {
      if (c == '/') c = '_';
    }
    path_ = std::filesystem::temp_directory_path() /
            ("mm-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + "-" + name);
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline void WriteText(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string ReadText(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Code of the Error thrown by `f`, nullopt if it returns normally.
template <typename F>
std::optional<ErrorCode> CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline RgbImage Solid(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      uint8_t* p = img.at(x, y);
      p[0] = r;
      p[1] = g;
      p[2] = b;
    }
  }
  return img;
}

// Three 40x30 PNGs in two classes; image 3 is a test image.
inline void WriteTinyDataset(const std::filesystem::path& root) {
  WriteText(root / "images.txt",
            "1 001.Alpha/a_1.png\n"
            "2 001.Alpha/a_2.png\n"
            "3 002.Beta/b_3.png\n");
  WriteText(root / "bounding_boxes.txt",
            "1 10.0 8.0 12.0 10.0\n"
            "2 0.0 0.0 40.0 30.0\n"
            "3 5.5 4.5 20.0 15.0\n");
  WriteText(root / "classes.txt", "1 001.Alpha\n2 002.Beta\n");
  WriteText(root / "image_class_labels.txt", "1 1\n2 1\n3 2\n");
  WriteText(root / "train_test_split.txt", "1 1\n2 1\n3 0\n");
  std::filesystem::create_directories(root / "images/001.Alpha");
  std::filesystem::create_directories(root / "images/002.Beta");
  WritePng(root / "images/001.Alpha/a_1.png", Solid(40, 30, 200, 40, 40));
  WritePng(root / "images/001.Alpha/a_2.png", Solid(40, 30, 40, 200, 40));
  WritePng(root / "images/002.Beta/b_3.png", Solid(40, 30, 40, 40, 200));
}

}  // namespace metamorph::testing

#endif  // METAMORPH_TESTS_UNIT_TEST_UTIL_H_
