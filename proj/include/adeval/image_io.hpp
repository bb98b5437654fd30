// Copyright 2026 The adeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "adeval/grid.hpp"

namespace adeval {

/// RGB image in normalized [0,1] working representation, interleaved.
class RgbImage {
public:
  RgbImage() = default;
  RgbImage(std::size_t height, std::size_t width, float fill = 0.0f)
      : height_(height), width_(width), data_(height * width * 3, fill) {}

  static RgbImage from_bytes(std::size_t height, std::size_t width, const std::vector<std::uint8_t>& rgb);
  /// Quantizes to 8 bits per channel, rounding to nearest.
  std::vector<std::uint8_t> to_bytes() const;

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }

  float& at(std::size_t row, std::size_t col, std::size_t ch) { return data_[(row * width_ + col) * 3 + ch]; }
  float at(std::size_t row, std::size_t col, std::size_t ch) const { return data_[(row * width_ + col) * 3 + ch]; }

  std::vector<float>& data() noexcept { return data_; }
  const std::vector<float>& data() const noexcept { return data_; }

  void clamp();

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<float> data_;
};

/// PNG or JPEG, chosen by file content. Grayscale inputs are replicated to RGB.
RgbImage load_rgb_image(const std::filesystem::path& path);
/// Format chosen by extension (.jpg/.jpeg -> JPEG quality 95, otherwise PNG).
void save_rgb_image(const std::filesystem::path& path, const RgbImage& image);

Grid<std::uint8_t> read_png_gray8(const std::filesystem::path& path);
Grid<std::uint16_t> read_png_gray16(const std::filesystem::path& path);
void write_png_gray8(const std::filesystem::path& path, const Grid<std::uint8_t>& pixels);
void write_png_gray16(const std::filesystem::path& path, const Grid<std::uint16_t>& pixels);

/// Bit depth of a PNG file's samples (8 or 16).
int png_bit_depth(const std::filesystem::path& path);

}  // namespace adeval
