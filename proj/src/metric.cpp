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

#include "adeval/metric.hpp"

#include <algorithm>
#include <utility>

namespace adeval {

bool is_registered_metric(std::string_view name) noexcept {
  return std::find(kMetricRegistry.begin(), kMetricRegistry.end(), name) != kMetricRegistry.end();
}

std::optional<std::string> canonical_metric_name(std::string_view name) {
  if (is_registered_metric(name)) return std::string(name);
  static constexpr std::pair<std::string_view, std::string_view> aliases[] = {
      {"image_AUROC", metric_names::image_auroc}, {"image_F1Max", metric_names::image_f1max},
      {"image_F1Score", metric_names::image_f1max}, {"image_PG2", metric_names::image_pg2},
      {"image_PB2", metric_names::image_pb2},     {"pixel_AUROC", metric_names::pixel_auroc},
      {"pixel_AUPRO", metric_names::pixel_aupro}, {"pixel_F1Max", metric_names::pixel_f1max},
      {"pixel_F1Score", metric_names::pixel_f1max}, {"im.F1-Max", metric_names::image_f1max},
      {"pix.F1-Max", metric_names::pixel_f1max},
  };
  for (const auto& [alias, canonical] : aliases) {
    if (alias == name) return std::string(canonical);
  }
  return std::nullopt;
}

}  // namespace adeval
