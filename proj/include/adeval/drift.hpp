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

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "adeval/image_io.hpp"
#include "adeval/map_io.hpp"
#include "adeval/rng.hpp"

namespace adeval {

// Synthetic data drift: every image receives one or two transforms taken
// from distinct categories, applied in the fixed order
// motion/quality -> lighting -> camera position.

enum class DriftCategory { motion_quality, lighting, camera_position };

std::string_view to_string(DriftCategory category) noexcept;

/// Parameter ranges of the drift pipeline. Defaults reproduce the published
/// setup; every value is sampled uniformly from its range.
struct DriftSettings {
  int blur_kernel = 7;
  std::pair<double, double> blur_sigma{0.1, 1.5};
  double noise_mean = 0.5;
  double noise_stddev = 1.0;
  std::pair<double, double> noise_scale{0.01, 0.05};
  std::pair<double, double> brightness{0.5, 1.5};
  std::pair<double, double> contrast{0.5, 1.5};
  std::pair<double, double> saturation{0.5, 1.5};
  int shadow_layers = 3;
  double shadow_brightness = 0.0;
  std::pair<double, double> rotation_deg{-5.0, 5.0};
  std::pair<double, double> crop_area{0.8, 1.0};
  double perspective_distortion = 0.2;
};

struct Point2 {
  double x = 0.0;  // normalized to [0, 1] of the image width
  double y = 0.0;  // normalized to [0, 1] of the image height
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct BlurStep {
  int kernel = 7;
  double sigma = 1.0;
  friend bool operator==(const BlurStep&, const BlurStep&) = default;
};
struct NoiseStep {
  double scale = 0.0;
  double mean = 0.5;
  double stddev = 1.0;
  std::uint64_t noise_seed = 0;
  friend bool operator==(const NoiseStep&, const NoiseStep&) = default;
};
struct JitterStep {
  double brightness = 1.0;
  double contrast = 1.0;
  double saturation = 1.0;
  friend bool operator==(const JitterStep&, const JitterStep&) = default;
};
struct ShadowStep {
  std::vector<std::array<Point2, 4>> layers;  // convex quadrilaterals, vertices in order
  double brightness = 0.0;
  friend bool operator==(const ShadowStep&, const ShadowStep&) = default;
};
struct RotationStep {
  double angle_deg = 0.0;  // positive is counter-clockwise on screen
  friend bool operator==(const RotationStep&, const RotationStep&) = default;
};
struct CropStep {
  double area = 1.0;     // kept fraction of the image area, aspect preserved
  double offset_x = 0.0;  // crop position as a fraction of the horizontal slack
  double offset_y = 0.0;
  friend bool operator==(const CropStep&, const CropStep&) = default;
};
struct PerspectiveStep {
  double distortion = 0.2;
  /// Inward displacement of the corners TL, TR, BR, BL as fractions of
  /// distortion * half the image width (x) and height (y).
  std::array<Point2, 4> corners{};
  friend bool operator==(const PerspectiveStep&, const PerspectiveStep&) = default;
};

using DriftStep = std::variant<BlurStep, NoiseStep, JitterStep, ShadowStep, RotationStep, CropStep, PerspectiveStep>;

DriftCategory category_of(const DriftStep& step) noexcept;
std::string_view transform_name(const DriftStep& step) noexcept;

struct DriftPlan {
  std::vector<DriftStep> steps;  // already in application order
  friend bool operator==(const DriftPlan&, const DriftPlan&) = default;
};

/// Pure function of (seed, sample_id, settings).
DriftPlan sample_plan(Seed seed, std::string_view sample_id, const DriftSettings& settings = {});

nlohmann::json to_json(const DriftPlan& plan);
DriftPlan plan_from_json(const nlohmann::json& doc);

/// Applies the plan. Geometric steps move the mask with nearest-neighbour
/// resampling; photometric steps leave it untouched. Pixels pulled from
/// outside the source become black (image) or 0 (mask).
std::pair<RgbImage, std::optional<PixelMask>> apply_plan(const RgbImage& image, const std::optional<PixelMask>& mask,
                                                         const DriftPlan& plan);

// Individual transforms. All preserve dimensions and clamp to [0, 1].

RgbImage gaussian_blur(const RgbImage& image, double sigma, int kernel = 7);
/// out = clamp(in + scale * N(mean, stddev)) per pixel and channel.
RgbImage gaussian_noise(const RgbImage& image, double scale, Rng& rng, double mean = 0.5, double stddev = 1.0);
RgbImage color_jitter(const RgbImage& image, double brightness, double contrast, double saturation);
RgbImage random_shadow(const RgbImage& image, const ShadowStep& shadow);
void rotate(RgbImage& image, PixelMask* mask, double angle_deg);
void crop_resize(RgbImage& image, PixelMask* mask, const CropStep& crop);
void perspective(RgbImage& image, PixelMask* mask, const PerspectiveStep& step);

struct CorpusSummary {
  std::size_t images = 0;
  std::size_t masks = 0;
};

/// Perturbs every image under corpus_dir. When corpus_dir/images exists,
/// masks are read from corpus_dir/masks/<relative path>.png and written to
/// out_dir/masks; otherwise every image under corpus_dir is perturbed and no
/// masks are produced. Writes out_dir/drift_plan.json with the seed and the
/// plan of every image, keyed by its relative path.
CorpusSummary perturb_corpus(const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir, Seed seed,
                             const DriftSettings& settings = {});

}  // namespace adeval
