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

#include "adeval/map_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "adeval/error.hpp"
#include "adeval/image_io.hpp"

namespace adeval {

namespace {

std::uint32_t read_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void write_u32_le(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>(v >> (8 * i)));
}

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void check_finite(const AnomalyMap& map, const std::filesystem::path& path) {
  for (float v : map.values()) {
    if (!std::isfinite(v)) throw ValidationError("non-finite score in " + path.string());
  }
}

bool has_png_signature(const std::vector<unsigned char>& bytes) {
  static constexpr unsigned char sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= 8 && std::equal(std::begin(sig), std::end(sig), bytes.begin());
}

AnomalyMap decode_raw(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  if (bytes.size() < 12) throw IoError("truncated raw map header in " + path.string());
  const std::uint32_t h = read_u32_le(bytes.data() + 4);
  const std::uint32_t w = read_u32_le(bytes.data() + 8);
  if (h == 0 || w == 0) throw ValidationError("raw map " + path.string() + " has zero dimension");
  const std::size_t n = static_cast<std::size_t>(h) * w;
  if (bytes.size() != 12 + 4 * n) {
    throw IoError("raw map " + path.string() + " payload size does not match " + std::to_string(h) + "x" +
                  std::to_string(w));
  }
  std::vector<float> values(n);
  const unsigned char* p = bytes.data() + 12;
  for (std::size_t i = 0; i < n; ++i, p += 4) {
    values[i] = std::bit_cast<float>(read_u32_le(p));
  }
  return AnomalyMap(h, w, std::move(values));
}

}  // namespace

AnomalyMap load_map(const std::filesystem::path& path) {
  const auto bytes = read_all(path);
  AnomalyMap map;
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kRawMapMagic, 4) == 0) {
    map = decode_raw(bytes, path);
  } else if (has_png_signature(bytes)) {
    if (png_bit_depth(path) == 16) {
      const auto px = read_png_gray16(path);
      std::vector<float> values(px.size());
      std::transform(px.values().begin(), px.values().end(), values.begin(),
                     [](std::uint16_t v) { return static_cast<float>(v / 65535.0); });
      map = AnomalyMap(px.height(), px.width(), std::move(values));
    } else {
      const auto px = read_png_gray8(path);
      std::vector<float> values(px.size());
      std::transform(px.values().begin(), px.values().end(), values.begin(),
                     [](std::uint8_t v) { return static_cast<float>(v / 255.0); });
      map = AnomalyMap(px.height(), px.width(), std::move(values));
    }
  } else {
    throw IoError("unsupported anomaly map format: " + path.string());
  }
  check_finite(map, path);
  return map;
}

PixelMask load_mask(const std::filesystem::path& path) {
  auto px = read_png_gray8(path);
  for (auto& v : px.values()) v = v > 0 ? 1 : 0;
  return px;
}

void save_map_raw(const std::filesystem::path& path, const AnomalyMap& map) {
  std::vector<unsigned char> out;
  out.reserve(12 + 4 * map.size());
  out.insert(out.end(), std::begin(kRawMapMagic), std::end(kRawMapMagic));
  write_u32_le(out, static_cast<std::uint32_t>(map.height()));
  write_u32_le(out, static_cast<std::uint32_t>(map.width()));
  for (float v : map.values()) write_u32_le(out, std::bit_cast<std::uint32_t>(v));
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("failed writing " + path.string());
}

void save_map_png16(const std::filesystem::path& path, const AnomalyMap& map) {
  Grid<std::uint16_t> px(map.height(), map.width());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const double v = std::clamp(static_cast<double>(map.values()[i]), 0.0, 1.0);
    px.values()[i] = static_cast<std::uint16_t>(std::lround(v * 65535.0));
  }
  write_png_gray16(path, px);
}

void save_mask_png(const std::filesystem::path& path, const PixelMask& mask) {
  Grid<std::uint8_t> px(mask.height(), mask.width());
  for (std::size_t i = 0; i < mask.size(); ++i) px.values()[i] = mask.values()[i] ? 255 : 0;
  write_png_gray8(path, px);
}

}  // namespace adeval
