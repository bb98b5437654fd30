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

#include "adeval/regions.hpp"

#include <numeric>

namespace adeval {

namespace {

class DisjointSets {
public:
  std::uint32_t make() {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    return parent_.back();
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller index wins so roots stay stable.
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

RegionSet label_regions(const PixelMask& mask) {
  const std::size_t h = mask.height();
  const std::size_t w = mask.width();
  Grid<std::uint32_t> provisional(h, w, 0);
  DisjointSets sets;
  sets.make();  // index 0 is background

  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (!mask(r, c)) continue;
      std::uint32_t label = 0;
      auto visit = [&](std::size_t rr, std::size_t cc) {
        const std::uint32_t n = provisional(rr, cc);
        if (n == 0) return;
        if (label == 0) label = n;
        else sets.unite(label, n);
      };
      // Already-visited 8-neighbours: W, NW, N, NE.
      if (c > 0) visit(r, c - 1);
      if (r > 0) {
        if (c > 0) visit(r - 1, c - 1);
        visit(r - 1, c);
        if (c + 1 < w) visit(r - 1, c + 1);
      }
      provisional(r, c) = label ? label : sets.make();
    }
  }

  RegionSet out;
  out.labels = Grid<std::uint32_t>(h, w, 0);
  std::vector<std::uint32_t> final_label(sets.size(), 0);
  for (std::size_t i = 0; i < provisional.size(); ++i) {
    const std::uint32_t p = provisional.values()[i];
    if (p == 0) continue;
    const std::uint32_t root = sets.find(p);
    if (final_label[root] == 0) {
      final_label[root] = static_cast<std::uint32_t>(++out.region_count);
      out.sizes.push_back(0);
    }
    const std::uint32_t k = final_label[root];
    out.labels.values()[i] = k;
    ++out.sizes[k - 1];
  }
  return out;
}

}  // namespace adeval
