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
#include <filesystem>
#include <string>
#include <vector>

#include "adeval/map_io.hpp"
#include "adeval/metric.hpp"
#include "adeval/regions.hpp"

namespace adeval {

/// One scored test image with its ground truth and extracted regions.
struct PixelSample {
  std::string sample_id;
  AnomalyMap map;
  PixelMask mask;
  RegionSet regions;
};

/// All scored test images of a category, pooled for pixel-level metrics.
/// False positives are counted over every normal pixel of every image and
/// regions are pooled across images.
class PixelPool {
public:
  /// Throws ValidationError if the map and mask shapes differ.
  void add(std::string sample_id, AnomalyMap map, PixelMask mask);
  /// Image without a mask file: every pixel is normal.
  void add_normal(std::string sample_id, AnomalyMap map);

  const std::vector<PixelSample>& samples() const noexcept { return samples_; }
  std::size_t anomalous_pixels() const noexcept { return anomalous_; }
  std::size_t normal_pixels() const noexcept { return total_ - anomalous_; }
  std::size_t total_pixels() const noexcept { return total_; }
  std::size_t region_count() const noexcept { return regions_; }

private:
  std::vector<PixelSample> samples_;
  std::size_t anomalous_ = 0;
  std::size_t total_ = 0;
  std::size_t regions_ = 0;
};

struct PixelMetricOptions {
  /// Upper FPR bound of the PRO integral, in (0, 1].
  double fpr_cap = 0.3;
  /// Pools with more pixels than this switch to binned thresholds.
  std::size_t exact_limit = std::size_t{1} << 26;
  /// Uniform score bins between the global min and max in binned mode.
  std::size_t bins = 100000;
  /// Close the integral with a point interpolated exactly at fpr_cap;
  /// otherwise stop at the last curve point at or below it.
  bool interpolate_cap = true;
  unsigned threads = 1;
  /// Keep the full PRO curve in PixelMetrics (one point per threshold).
  bool keep_curve = false;
};

/// Cumulative pooled counts at descending thresholds. pro[i] is the mean
/// per-region overlap at thresholds[i]. The final entry flags every pixel.
struct PixelCurve {
  std::vector<double> thresholds;
  std::vector<std::int64_t> tp;
  std::vector<std::int64_t> fp;
  std::vector<double> pro;
  std::int64_t positives = 0;
  std::int64_t negatives = 0;
  std::size_t regions = 0;
  bool binned = false;
};

/// Exact below options.exact_limit pooled pixels, binned above it.
PixelCurve build_pixel_curve(const PixelPool& pool, const PixelMetricOptions& options = {});

/// Per-region overlap against pooled false positive rate, starting at (0, 0).
struct ProCurve {
  std::vector<double> fpr;
  std::vector<double> pro;
};

ProCurve pro_curve(const PixelCurve& curve);

/// Trapezoidal area under the curve on [0, cap], divided by cap.
double normalized_partial_area(const ProCurve& curve, double cap, bool interpolate_cap = true);

MetricValue auroc_pixel(const PixelCurve& curve);
MetricValue aupro(const PixelCurve& curve, const PixelMetricOptions& options = {});
MetricValue f1max_pixel(const PixelCurve& curve);

MetricValue auroc_pixel(const PixelPool& pool, const PixelMetricOptions& options = {});
MetricValue aupro(const PixelPool& pool, const PixelMetricOptions& options = {});
MetricValue f1max_pixel(const PixelPool& pool, const PixelMetricOptions& options = {});

struct PixelMetrics {
  MetricValue auroc;
  MetricValue aupro;
  MetricValue f1max;
  ProCurve curve;  // empty unless PixelMetricOptions::keep_curve
};

/// All three pixel metrics from a single pass over the pool.
PixelMetrics evaluate_pixels(const PixelPool& pool, const PixelMetricOptions& options = {});

/// CSV with header "fpr,pro".
void write_pro_curve_csv(const std::filesystem::path& path, const ProCurve& curve);

}  // namespace adeval
