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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adeval/manifest.hpp"
#include "adeval/metric.hpp"
#include "adeval/pixel_metrics.hpp"

namespace adeval {

/// Reads "sample_id,score" with a header line. Duplicate ids and
/// non-finite scores are rejected.
std::map<std::string, double> read_scores_csv(const std::filesystem::path& path);

struct ScoreOptions {
  /// Root for map_path entries.
  std::filesystem::path maps_root = ".";
  /// Root for mask_path entries.
  std::filesystem::path data_root = ".";
  double pg_budget = 0.02;
  double pb_budget = 0.02;
  PixelMetricOptions pixel;
  /// Optional PRO curve dump (fpr,pro).
  std::optional<std::filesystem::path> curve_csv;
};

struct CategoryScores {
  std::vector<MetricValue> metrics;  // registry order
  /// Bad test samples left out of the pixel pool for lack of a mask.
  std::vector<std::string> skipped;
};

/// Scores the test split of one category. Pixel metrics are unavailable
/// when the manifest has no pixel labels.
CategoryScores score_category(const DatasetManifest& manifest, const std::map<std::string, double>& scores,
                              const ScoreOptions& options = {});

}  // namespace adeval
