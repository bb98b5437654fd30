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
#include <optional>
#include <string>
#include <string_view>

namespace adeval {

namespace metric_names {
inline constexpr std::string_view image_auroc = "im.AUROC";
inline constexpr std::string_view image_f1max = "im.F1Max";
inline constexpr std::string_view image_pg2 = "im.PG2";
inline constexpr std::string_view image_pb2 = "im.PB2";
inline constexpr std::string_view pixel_auroc = "pix.AUROC";
inline constexpr std::string_view pixel_aupro = "pix.AUPRO";
inline constexpr std::string_view pixel_f1max = "pix.F1Max";
}  // namespace metric_names

/// The seven metric names every results file is keyed by.
inline constexpr std::array<std::string_view, 7> kMetricRegistry = {
    metric_names::image_auroc, metric_names::image_f1max, metric_names::image_pg2, metric_names::image_pb2,
    metric_names::pixel_auroc, metric_names::pixel_aupro, metric_names::pixel_f1max,
};

bool is_registered_metric(std::string_view name) noexcept;

/// Maps alternative spellings found in older results files ("image_AUROC",
/// "pixel_AUPRO", ...) to registry names. Returns nullopt for unknown names.
std::optional<std::string> canonical_metric_name(std::string_view name);

/// A metric result in [0,1], or an explicit marker that it could not be
/// computed for this input.
struct MetricValue {
  std::string name;
  std::optional<double> value;

  bool available() const noexcept { return value.has_value(); }

  static MetricValue ok(std::string_view name, double v) { return {std::string(name), v}; }
  static MetricValue unavailable(std::string_view name) { return {std::string(name), std::nullopt}; }

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

}  // namespace adeval
