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

#include <png.h>

#include <array>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>

// jpeglib.h needs <cstdio> first.
#include <jpeglib.h>

#include "common/error.h"

namespace metamorph {

namespace fs = std::filesystem;

ImageFormat DetectFormat(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kMissingFile, path.string());
  std::array<unsigned char, 8> magic{};
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  const auto got = in.gcount();
  static constexpr std::array<unsigned char, 8> kPng{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got == 8 && magic == kPng) return ImageFormat::kPng;
  if (got >= 3 && magic[0] == 0xFF && magic[1] == 0xD8 && magic[2] == 0xFF) {
    return ImageFormat::kJpeg;
  }
  Fail(ErrorCode::kUnsupportedFormat, path.string());
}

namespace {

struct FileCloser {
  void operator()(FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<FILE, FileCloser>;

FilePtr OpenOrFail(const fs::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    Fail(mode[0] == 'r' ? ErrorCode::kMissingFile : ErrorCode::kIoFailure, path.string());
  }
  return f;
}

// libpng simplified API; png_image_free is idempotent.
struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

template <int C>
Raster<C> ReadPng(const fs::path& path) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
    Fail(ErrorCode::kIoFailure, path.string() + ": " + png.image.message);
  }
  png.image.format = C == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  Raster<C> out(static_cast<int>(png.image.width), static_cast<int>(png.image.height));
  if (!png_image_finish_read(&png.image, nullptr, out.bytes().data(), 0, nullptr)) {
    Fail(ErrorCode::kIoFailure, path.string() + ": " + png.image.message);
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Decodes a JPEG. When header_only is set the returned raster is empty and
// only info is filled. No C++ objects with destructors live across setjmp.
bool DecodeJpeg(FILE* file, bool header_only, ImageInfo* info, std::vector<uint8_t>* rgb,
                std::string* error) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = JpegErrorExit;
  if (setjmp(err.jump)) {
    *error = err.message;
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  info->width = static_cast<int>(cinfo.image_width);
  info->height = static_cast<int>(cinfo.image_height);
  info->format = ImageFormat::kJpeg;
  if (!header_only) {
    cinfo.out_color_space = JCS_RGB;
    jpeg_start_decompress(&cinfo);
    const size_t stride = static_cast<size_t>(cinfo.output_width) * 3;
    rgb->resize(stride * cinfo.output_height);
    while (cinfo.output_scanline < cinfo.output_height) {
      JSAMPROW row = rgb->data() + stride * cinfo.output_scanline;
      jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
  }
  jpeg_destroy_decompress(&cinfo);
  return true;
}

template <int C>
void WritePngImpl(const fs::path& path, const Raster<C>& img) {
  if (img.empty()) Fail(ErrorCode::kEmptyImage, path.string());
  PngImage png;
  png.image.width = static_cast<png_uint_32>(img.width());
  png.image.height = static_cast<png_uint_32>(img.height());
  png.image.format = C == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png.image, path.c_str(), 0, img.bytes().data(), 0, nullptr)) {
    Fail(ErrorCode::kIoFailure, path.string() + ": " + png.image.message);
  }
}

}  // namespace

ImageInfo ProbeImage(const fs::path& path) {
  const ImageFormat format = DetectFormat(path);
  ImageInfo info;
  info.format = format;
  if (format == ImageFormat::kPng) {
    PngImage png;
    if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
      Fail(ErrorCode::kIoFailure, path.string() + ": " + png.image.message);
    }
    info.width = static_cast<int>(png.image.width);
    info.height = static_cast<int>(png.image.height);
    return info;
  }
  FilePtr f = OpenOrFail(path, "rb");
  std::string error;
  if (!DecodeJpeg(f.get(), true, &info, nullptr, &error)) {
    Fail(ErrorCode::kIoFailure, path.string() + ": " + error);
  }
  return info;
}

RgbImage ReadRgb(const fs::path& path) {
  if (DetectFormat(path) == ImageFormat::kPng) return ReadPng<3>(path);
  FilePtr f = OpenOrFail(path, "rb");
  ImageInfo info;
  std::vector<uint8_t> pixels;
  std::string error;
  if (!DecodeJpeg(f.get(), false, &info, &pixels, &error)) {
    Fail(ErrorCode::kIoFailure, path.string() + ": " + error);
  }
  RgbImage out(info.width, info.height);
  std::copy(pixels.begin(), pixels.end(), out.bytes().begin());
  return out;
}

RgbaImage ReadRgba(const fs::path& path) {
  if (DetectFormat(path) != ImageFormat::kPng) {
    Fail(ErrorCode::kUnsupportedFormat, "RGBA sprites must be PNG: " + path.string());
  }
  return ReadPng<4>(path);
}

void WritePng(const fs::path& path, const RgbImage& img) { WritePngImpl(path, img); }
void WritePng(const fs::path& path, const RgbaImage& img) { WritePngImpl(path, img); }

}  // namespace metamorph
