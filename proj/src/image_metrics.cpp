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

#include "adeval/image_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "adeval/error.hpp"
#include "adeval/numeric.hpp"
#include "curve_math.hpp"

namespace adeval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_input(const LabeledScores& ls) {
  if (ls.scores.size() != ls.labels.size()) throw ValidationError("scores and labels differ in length");
  if (ls.scores.empty()) throw ValidationError("no scores");
  for (double s : ls.scores) {
    if (!std::isfinite(s)) throw ValidationError("non-finite score");
  }
}

void check_budget(double budget) {
  if (!(budget >= 0.0 && budget < 1.0)) throw ValidationError("budget must lie in [0, 1)");
}

// Builds the sweep without the class-balance precondition.
ThresholdSweep build_sweep(const LabeledScores& ls) {
  check_input(ls);
  std::vector<std::size_t> order(ls.scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ls.scores[a] > ls.scores[b]; });

  ThresholdSweep sw;
  sw.total_bad = static_cast<std::int64_t>(ls.bad_count());
  sw.total_good = static_cast<std::int64_t>(ls.scores.size()) - sw.total_bad;
  std::int64_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double t = ls.scores[order[i]];
    for (; i < order.size() && ls.scores[order[i]] == t; ++i) {
      (ls.labels[order[i]] == Label::bad ? tp : fp) += 1;
    }
    sw.thresholds.push_back(t);
    sw.tp.push_back(tp);
    sw.fp.push_back(fp);
    sw.fn.push_back(sw.total_bad - tp);
    sw.tn.push_back(sw.total_good - fp);
  }
  return sw;
}

OperatingPoint point_at(const ThresholdSweep& sw, std::size_t i, double value) {
  return {sw.thresholds[i], sw.tp[i], sw.fp[i], sw.tn[i], sw.fn[i], value};
}

}  // namespace

std::size_t LabeledScores::bad_count() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Label::bad));
}

std::size_t LabeledScores::good_count() const { return labels.size() - bad_count(); }

ThresholdSweep sweep(const LabeledScores& ls) {
  auto sw = build_sweep(ls);
  if (sw.total_bad == 0 || sw.total_good == 0) throw ValidationError("degenerate class balance");
  return sw;
}

MetricValue auroc(const LabeledScores& ls) {
  const auto sw = sweep(ls);
  const std::int64_t twice = detail::twice_roc_area(sw.tp, sw.fp);
  return MetricValue::ok(metric_names::image_auroc,
                         static_cast<double>(twice) / (2.0 * static_cast<double>(sw.total_bad) * sw.total_good));
}

OperatingPoint f1max_point(const LabeledScores& ls) {
  const auto sw = build_sweep(ls);
  if (sw.total_bad == 0) throw ValidationError("F1-Max needs at least one bad sample");
  std::size_t best = 0;
  double best_f1 = -1.0;
  for (std::size_t i = 0; i < sw.size(); ++i) {
    const double f1 = detail::f1_from_counts(sw.tp[i], sw.fp[i], sw.fn[i]);
    if (f1 > best_f1) {
      best_f1 = f1;
      best = i;
    }
  }
  return point_at(sw, best, best_f1);
}

MetricValue f1max(const LabeledScores& ls) { return MetricValue::ok(metric_names::image_f1max, f1max_point(ls).value); }

std::int64_t allowed_errors(double budget, std::int64_t count) {
  check_budget(budget);
  return snapped_floor(budget * static_cast<double>(count));
}

OperatingPoint pg_point(const LabeledScores& ls, double fnr_budget) {
  const auto sw = sweep(ls);
  const std::int64_t allowed = allowed_errors(fnr_budget, sw.total_bad);
  // fn only shrinks as the threshold drops and the lowest threshold has
  // fn == 0, so the first feasible entry is the highest feasible threshold.
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (sw.fn[i] <= allowed) {
      return point_at(sw, i, static_cast<double>(sw.tn[i]) / static_cast<double>(sw.total_good));
    }
  }
  throw std::logic_error("sweep ended with false negatives");
}

MetricValue pg_at(const LabeledScores& ls, double fnr_budget) {
  return MetricValue::ok(metric_names::image_pg2, pg_point(ls, fnr_budget).value);
}

OperatingPoint pb_point(const LabeledScores& ls, double fpr_budget) {
  const auto sw = sweep(ls);
  const std::int64_t allowed = allowed_errors(fpr_budget, sw.total_good);
  // Before the first threshold nothing is flagged: the +inf operating point.
  OperatingPoint best{kInf, 0, 0, sw.total_good, sw.total_bad, 0.0};
  for (std::size_t i = 0; i < sw.size() && sw.fp[i] <= allowed; ++i) {
    best = point_at(sw, i, static_cast<double>(sw.tp[i]) / static_cast<double>(sw.total_bad));
  }
  return best;
}

MetricValue pb_at(const LabeledScores& ls, double fpr_budget) {
  return MetricValue::ok(metric_names::image_pb2, pb_point(ls, fpr_budget).value);
}

}  // namespace adeval
