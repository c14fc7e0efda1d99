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

#ifndef METAMORPH_IMAGE_CODEC_H_
#define METAMORPH_IMAGE_CODEC_H_

#include <filesystem>

#include "image/raster.h"

namespace metamorph {

enum class ImageFormat { kPng, kJpeg };

struct ImageInfo {
  int width = 0;
  int height = 0;
  ImageFormat format = ImageFormat::kPng;
};

// Sniffs the magic bytes; anything but PNG/JPEG is UnsupportedFormat.
ImageFormat DetectFormat(const std::filesystem::path& path);

// Reads only the header.
ImageInfo ProbeImage(const std::filesystem::path& path);

// Decodes to RGB; alpha, if present, is dropped and grey is expanded.
RgbImage ReadRgb(const std::filesystem::path& path);

// PNG only. Images without alpha decode as fully opaque.
RgbaImage ReadRgba(const std::filesystem::path& path);

void WritePng(const std::filesystem::path& path, const RgbImage& img);
void WritePng(const std::filesystem::path& path, const RgbaImage& img);

}  // namespace metamorph

#endif  // METAMORPH_IMAGE_CODEC_H_
