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

#include "adeval/numeric.hpp"

#include <cstdio>

namespace adeval {

namespace {
constexpr double kSnap = 1e-9;
}

std::int64_t round_half_even(double value) {
  const double lower = std::floor(value);
  const double frac = value - lower;
  if (std::abs(frac - 0.5) <= kSnap) {
    const auto l = static_cast<std::int64_t>(lower);
    return (l % 2 == 0) ? l : l + 1;
  }
  return static_cast<std::int64_t>(std::llround(value));
}

std::int64_t snapped_floor(double value) {
  return static_cast<std::int64_t>(std::floor(value + kSnap));
}

double rounded_percent(double fraction) {
  const double tenths = fraction * 1000.0;
  return std::floor(tenths + 0.5 + kSnap) / 10.0;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", rounded_percent(fraction));
  return buf;
}

}  // namespace adeval
