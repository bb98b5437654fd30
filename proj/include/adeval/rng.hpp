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

#include <cstdint>
#include <random>
#include <string_view>

namespace adeval {

/// Root seed of an experiment run.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

/// 64-bit FNV-1a of a byte string.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Key of the substream owned by (seed, sample_id, purpose). Pure function of
/// its arguments; adding or removing other samples never changes it.
std::uint64_t substream_key(Seed seed, std::string_view sample_id, std::string_view purpose) noexcept;

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the real-valued draws below are computed
/// here rather than through <random> distributions, which are not portable.
class Rng {
public:
  explicit Rng(std::uint64_t key) : engine_(key) {}

  static Rng substream(Seed seed, std::string_view sample_id, std::string_view purpose) {
    return Rng(substream_key(seed, sample_id, purpose));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), n > 0, without modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal via Box-Muller (one value per call).
  double normal();

private:
  std::mt19937_64 engine_;
};

}  // namespace adeval
