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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "adeval/grid.hpp"
#include "adeval/map_io.hpp"

namespace adeval {

/// Connected anomalous regions of a mask. Label 0 is background, regions are
/// numbered 1..region_count in row-major order of their first pixel.
struct RegionSet {
  std::size_t region_count = 0;
  Grid<std::uint32_t> labels;
  std::vector<std::size_t> sizes;  // sizes[k - 1] is the pixel count of region k

  friend bool operator==(const RegionSet&, const RegionSet&) = default;
};

/// 8-connected component labeling.
RegionSet label_regions(const PixelMask& mask);

}  // namespace adeval
