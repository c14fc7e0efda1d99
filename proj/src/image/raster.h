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

#ifndef METAMORPH_IMAGE_RASTER_H_
#define METAMORPH_IMAGE_RASTER_H_

#include <cstdint>
#include <span>
#include <vector>

namespace metamorph {

// Interleaved 8-bit raster with a compile-time channel count.
template <int Channels>
class Raster {
 public:
  static constexpr int kChannels = Channels;

  Raster() = default;
  Raster(int width, int height, uint8_t fill = 0)
      : width_(width),
        height_(height),
        data_(static_cast<size_t>(width) * height * Channels, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ <= 0 || height_ <= 0; }
  size_t pixel_count() const { return static_cast<size_t>(width_) * height_; }

  uint8_t* at(int x, int y) { return data_.data() + Offset(x, y); }
  const uint8_t* at(int x, int y) const { return data_.data() + Offset(x, y); }

  std::span<uint8_t> bytes() { return data_; }
  std::span<const uint8_t> bytes() const { return data_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  size_t Offset(int x, int y) const {
    return (static_cast<size_t>(y) * width_ + x) * Channels;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> data_;
};

using RgbImage = Raster<3>;
using RgbaImage = Raster<4>;

RgbImage RotateQuarter(const RgbImage& img);
RgbImage FlipHorizontal(const RgbImage& img);
RgbImage FlipVertical(const RgbImage& img);

// Box-filter resample of a straight-alpha RGBA raster. Colour is averaged in
// premultiplied space so transparent pixels do not bleed into edges.
RgbaImage ResizeRgba(const RgbaImage& src, int width, int height);

}  // namespace metamorph

#endif  // METAMORPH_IMAGE_RASTER_H_
