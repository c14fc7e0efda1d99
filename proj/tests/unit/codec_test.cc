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

#include "image/codec.h"

#include <cstdio>
#include <random>

#include <jpeglib.h>

#include "common/error.h"
#include "gtest/gtest.h"
#include "unit/test_util.h"

namespace metamorph {
namespace {

// Minimal JPEG encoder for fixtures.
void WriteJpeg(const std::filesystem::path& path, const RgbImage& img, int quality) {
  jpeg_compress_struct cinfo;
  jpeg_error_mgr jerr;
  cinfo.err = jpeg_std_error(&jerr);
  jpeg_create_compress(&cinfo);
  FILE* f = std::fopen(path.c_str(), "wb");
  ASSERT_NE(f, nullptr);
  jpeg_stdio_dest(&cinfo, f);
  cinfo.image_width = img.width();
  cinfo.image_height = img.height();
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<uint8_t*>(img.at(0, cinfo.next_scanline));
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  jpeg_destroy_compress(&cinfo);
  std::fclose(f);
}

TEST(CodecTest, PngRoundTripRgb) {
  testing::TempDir dir;
  RgbImage img(7, 5);
  std::mt19937 gen(1);
  for (auto& b : img.bytes()) b = static_cast<uint8_t>(gen());
  WritePng(dir / "a.png", img);
  EXPECT_EQ(ReadRgb(dir / "a.png"), img);
  const ImageInfo info = ProbeImage(dir / "a.png");
  EXPECT_EQ(info.width, 7);
  EXPECT_EQ(info.height, 5);
  EXPECT_EQ(info.format, ImageFormat::kPng);
}

TEST(CodecTest, PngRoundTripRgba) {
  testing::TempDir dir;
  RgbaImage img(4, 4);
  for (size_t i = 0; i < img.bytes().size(); ++i) img.bytes()[i] = static_cast<uint8_t>(i * 11);
  WritePng(dir / "a.png", img);
  EXPECT_EQ(ReadRgba(dir / "a.png"), img);
}

TEST(CodecTest, JpegDecodes) {
  testing::TempDir dir;
  const RgbImage img = testing::Solid(16, 8, 120, 60, 30);
  WriteJpeg(dir / "a.jpg", img, 95);
  EXPECT_EQ(DetectFormat(dir / "a.jpg"), ImageFormat::kJpeg);
  const RgbImage back = ReadRgb(dir / "a.jpg");
  ASSERT_EQ(back.width(), 16);
  ASSERT_EQ(back.height(), 8);
  for (size_t i = 0; i < back.bytes().size(); ++i) EXPECT_NEAR(back.bytes()[i], img.bytes()[i], 4);
  const ImageInfo info = ProbeImage(dir / "a.jpg");
  EXPECT_EQ(info.width, 16);
  EXPECT_EQ(info.height, 8);
}

TEST(CodecTest, RejectsOtherFormats) {
  testing::TempDir dir;
  testing::WriteText(dir / "x.gif", "GIF89a....");
  try {
    ReadRgb(dir / "x.gif");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedFormat);
  }
}

TEST(CodecTest, TruncatedPngFails) {
  testing::TempDir dir;
  WritePng(dir / "a.png", testing::Solid(32, 32, 1, 2, 3));
  const std::string bytes = testing::ReadText(dir / "a.png");
  testing::WriteText(dir / "b.png", bytes.substr(0, bytes.size() / 2));
  EXPECT_THROW(ReadRgb(dir / "b.png"), Error);
}

TEST(RasterTest, RotateFourTimesIsIdentity) {
  RgbImage img(5, 3);
  for (size_t i = 0; i < img.bytes().size(); ++i) img.bytes()[i] = static_cast<uint8_t>(i);
  RgbImage r = img;
  for (int i = 0; i < 4; ++i) r = RotateQuarter(r);
  EXPECT_EQ(r, img);
  EXPECT_EQ(RotateQuarter(img).width(), 3);
}

TEST(RasterTest, ResizeKeepsOpaqueColour) {
  RgbaImage src(10, 10);
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      uint8_t* p = src.at(x, y);
      p[0] = 50, p[1] = 100, p[2] = 150, p[3] = 255;
    }
  }
  const RgbaImage dst = ResizeRgba(src, 3, 4);
  ASSERT_EQ(dst.width(), 3);
  ASSERT_EQ(dst.height(), 4);
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 3; ++x) {
      const uint8_t* p = dst.at(x, y);
      EXPECT_EQ(p[0], 50);
      EXPECT_EQ(p[1], 100);
      EXPECT_EQ(p[2], 150);
      EXPECT_EQ(p[3], 255);
    }
  }
}

}  // namespace
}  // namespace metamorph
