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

#include "adeval/grid.hpp"

namespace adeval {

/// Per-pixel anomaly scores, higher is more anomalous. Always finite.
using AnomalyMap = Grid<float>;

/// Binary ground truth, 1 marks an anomalous pixel.
using PixelMask = Grid<std::uint8_t>;

/// Magic bytes opening a raw anomaly map file.
inline constexpr char kRawMapMagic[4] = {'A', 'D', 'M', '1'};

/// Loads an anomaly map from either the raw tensor format ("ADM1", u32 height,
/// u32 width, little-endian float32 row-major) or a grayscale PNG (16-bit
/// values mapped linearly to [0,1]; 8-bit accepted as well).
/// Throws ValidationError("non-finite score") on NaN/Inf and IoError on
/// unreadable or truncated files.
AnomalyMap load_map(const std::filesystem::path& path);

/// Loads a grayscale PNG mask and binarizes it at value > 0.
PixelMask load_mask(const std::filesystem::path& path);

void save_map_raw(const std::filesystem::path& path, const AnomalyMap& map);
/// Values are clamped to [0,1] and quantized to 16 bits.
void save_map_png16(const std::filesystem::path& path, const AnomalyMap& map);
/// Writes 0/255.
void save_mask_png(const std::filesystem::path& path, const PixelMask& mask);

}  // namespace adeval
