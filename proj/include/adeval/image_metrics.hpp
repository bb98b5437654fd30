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
#include <vector>

#include "adeval/manifest.hpp"
#include "adeval/metric.hpp"

namespace adeval {

/// Image-level anomaly scores paired with ground-truth labels. Bad is the
/// positive class; a sample is classified bad when score >= threshold.
struct LabeledScores {
  std::vector<double> scores;
  std::vector<Label> labels;

  void add(double score, Label label) {
    scores.push_back(score);
    labels.push_back(label);
  }
  std::size_t bad_count() const;
  std::size_t good_count() const;
};

/// Confusion counts at every distinct score, thresholds descending. Equal
/// scores share one entry.
struct ThresholdSweep {
  std::vector<double> thresholds;
  std::vector<std::int64_t> tp, fp, tn, fn;
  std::int64_t total_bad = 0;
  std::int64_t total_good = 0;

  std::size_t size() const noexcept { return thresholds.size(); }
};

/// Throws ValidationError("degenerate class balance") unless both classes
/// are present, and on non-finite scores or length mismatch.
ThresholdSweep sweep(const LabeledScores& ls);

/// Threshold and confusion counts a threshold metric selected. threshold is
/// +inf for the "classify nothing as bad" point.
struct OperatingPoint {
  double threshold = 0.0;
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;
  double value = 0.0;

  friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Area under ROC, ties counted one half.
MetricValue auroc(const LabeledScores& ls);

/// Highest F1 over all thresholds; the first (highest) threshold wins ties.
OperatingPoint f1max_point(const LabeledScores& ls);
MetricValue f1max(const LabeledScores& ls);

/// Largest allowed misses of `count` items at `budget`: floor(budget * count).
std::int64_t allowed_errors(double budget, std::int64_t count);

/// True negative rate at the highest threshold that misses at most
/// floor(fnr_budget * B) bad samples ("presorted good").
OperatingPoint pg_point(const LabeledScores& ls, double fnr_budget = 0.02);
MetricValue pg_at(const LabeledScores& ls, double fnr_budget = 0.02);

/// True positive rate at the lowest threshold that flags at most
/// floor(fpr_budget * G) good samples ("presorted bad").
OperatingPoint pb_point(const LabeledScores& ls, double fpr_budget = 0.02);
MetricValue pb_at(const LabeledScores& ls, double fpr_budget = 0.02);

}  // namespace adeval
