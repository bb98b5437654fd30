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

// Random instance generators and filesystem helpers shared by the tests.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "adeval/image_metrics.hpp"
#include "adeval/pixel_metrics.hpp"
#include "oracles.hpp"

namespace testing_support {

inline adeval::LabeledScores random_scores(std::mt19937_64& gen, std::size_t max_n = 200) {
  std::uniform_int_distribution<std::size_t> size(2, max_n);
  const std::size_t n = size(gen);
  // Few distinct levels produce heavy ties; many levels almost none.
  std::uniform_int_distribution<int> levels_dist(1, 3);
  const int mode = levels_dist(gen);
  const int levels = mode == 1 ? 3 : mode == 2 ? 20 : 1 << 30;
  std::uniform_int_distribution<int> level(0, levels - 1);
  std::normal_distribution<double> shift(0.0, 1.0);
  const double separation = std::abs(shift(gen));
  std::bernoulli_distribution coin(0.5);

  adeval::LabeledScores ls;
  for (std::size_t i = 0; i < n; ++i) {
    const bool bad = i == 0 ? true : i == 1 ? false : coin(gen);
    double s = static_cast<double>(level(gen)) / levels;
    if (bad) s += separation * static_cast<double>(level(gen) % 3) / 3.0;
    ls.add(s, bad ? adeval::Label::bad : adeval::Label::good);
  }
  return ls;
}

inline std::vector<bool> bad_flags(const adeval::LabeledScores& ls) {
  std::vector<bool> out;
  for (auto l : ls.labels) out.push_back(l == adeval::Label::bad);
  return out;
}

struct RandomPool {
  adeval::PixelPool pool;
  std::vector<oracle::PixelImage> images;
};

/// Masks are unions of random rectangles plus scattered pixels; scores are
/// quantized to `levels` values and raised inside the mask.
inline RandomPool random_pool(std::mt19937_64& gen, int max_images, int h, int w, int levels) {
  std::uniform_int_distribution<int> count(1, max_images);
  std::uniform_int_distribution<int> rects(0, 3);
  std::uniform_int_distribution<int> ry(0, h - 1), rx(0, w - 1);
  std::uniform_int_distribution<int> level(0, levels - 1);
  std::bernoulli_distribution sprinkle(0.01);
  RandomPool out;
  const int n = count(gen);
  for (int i = 0; i < n; ++i) {
    oracle::PixelImage im;
    im.h = h;
    im.w = w;
    im.mask.assign(static_cast<std::size_t>(h * w), 0);
    const int k = rects(gen);
    for (int q = 0; q < k; ++q) {
      int y0 = ry(gen), y1 = ry(gen), x0 = rx(gen), x1 = rx(gen);
      if (y0 > y1) std::swap(y0, y1);
      if (x0 > x1) std::swap(x0, x1);
      y1 = std::min(y1, y0 + h / 4);
      x1 = std::min(x1, x0 + w / 4);
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) im.mask[static_cast<std::size_t>(y * w + x)] = 1;
      }
    }
    for (auto& m : im.mask) {
      if (sprinkle(gen)) m = 1;
    }
    im.score.resize(im.mask.size());
    for (std::size_t p = 0; p < im.mask.size(); ++p) {
      int l = level(gen);
      if (im.mask[p]) l = std::min(levels - 1, l + levels / 3);
      im.score[p] = static_cast<double>(static_cast<float>(static_cast<double>(l) / levels));
    }
    out.images.push_back(im);
  }
  // At least one anomalous and one normal pixel overall.
  out.images[0].mask[0] = 1;
  out.images[0].mask.back() = 0;
  for (std::size_t i = 0; i < out.images.size(); ++i) {
    const auto& im = out.images[i];
    adeval::AnomalyMap map(static_cast<std::size_t>(h), static_cast<std::size_t>(w));
    adeval::PixelMask mask(static_cast<std::size_t>(h), static_cast<std::size_t>(w));
    for (std::size_t p = 0; p < im.score.size(); ++p) {
      map.values()[p] = static_cast<float>(im.score[p]);
      mask.values()[p] = im.mask[p];
    }
    out.pool.add("img_" + std::to_string(i), std::move(map), std::move(mask));
  }
  return out;
}

class TempDir {
public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("adeval_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

}  // namespace testing_support
