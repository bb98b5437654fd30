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

#include <cmath>
#include <cstdint>
#include <string>

namespace adeval {

/// Round to the nearest integer, ties to even. Values within 1e-9 of a
/// half-integer are treated as exact ties so that products such as 0.1 * 25
/// round the same way they would in decimal arithmetic.
std::int64_t round_half_even(double value);

/// Floor with the same decimal snapping as round_half_even.
std::int64_t snapped_floor(double value);

/// Fraction in [0,1] rendered as a percentage with one decimal, ties rounded
/// away from zero ("0.955" -> "95.5").
std::string format_percent(double fraction);

/// The percentage value format_percent prints.
double rounded_percent(double fraction);

}  // namespace adeval
