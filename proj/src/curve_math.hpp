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

// Helpers shared by the image- and pixel-level threshold metrics.

#include <cstdint>
#include <span>

namespace adeval::detail {

/// Twice the ROC area in count units (tp x fp), trapezoids from the origin.
/// Both spans are cumulative counts at descending thresholds. Exact in
/// integers; divide by 2 * P * N for the normalized area.
inline std::int64_t twice_roc_area(std::span<const std::int64_t> tp, std::span<const std::int64_t> fp) {
  std::int64_t area = 0;
  std::int64_t prev_tp = 0;
  std::int64_t prev_fp = 0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    area += (fp[i] - prev_fp) * (tp[i] + prev_tp);
    prev_tp = tp[i];
    prev_fp = fp[i];
  }
  return area;
}

/// F1 with bad as the positive class; 0 when nothing is detected.
inline double f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  if (tp == 0) return 0.0;
  return static_cast<double>(2 * tp) / static_cast<double>(2 * tp + fp + fn);
}

}  // namespace adeval::detail
