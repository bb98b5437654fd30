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

#include "adeval/pixel_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "adeval/error.hpp"
#include "adeval/parallel.hpp"
#include "curve_math.hpp"

namespace adeval {

void PixelPool::add(std::string sample_id, AnomalyMap map, PixelMask mask) {
  if (!mask.same_shape(map.height(), map.width())) {
    throw ValidationError("anomaly map is " + std::to_string(map.height()) + "x" + std::to_string(map.width()) +
                              " but mask is " + std::to_string(mask.height()) + "x" + std::to_string(mask.width()),
                          sample_id);
  }
  RegionSet regions = label_regions(mask);
  for (auto s : regions.sizes) anomalous_ += s;
  regions_ += regions.region_count;
  total_ += map.size();
  samples_.push_back({std::move(sample_id), std::move(map), std::move(mask), std::move(regions)});
}

void PixelPool::add_normal(std::string sample_id, AnomalyMap map) {
  PixelMask mask(map.height(), map.width(), 0);
  add(std::move(sample_id), std::move(map), std::move(mask));
}

namespace {

// Order-preserving map from float to unsigned; -0 and +0 share a key.
std::uint32_t sortable_key(float v) {
  if (v == 0.0f) v = 0.0f;
  const auto bits = std::bit_cast<std::uint32_t>(v);
  return (bits & 0x80000000u) ? ~bits : (bits | 0x80000000u);
}

float key_to_float(std::uint32_t key) {
  const std::uint32_t bits = (key & 0x80000000u) ? (key & 0x7fffffffu) : ~key;
  return std::bit_cast<float>(bits);
}

struct PoolTotals {
  std::int64_t positives;
  std::int64_t negatives;
  std::size_t regions;
};

PoolTotals totals_of(const PixelPool& pool) {
  return {static_cast<std::int64_t>(pool.anomalous_pixels()), static_cast<std::int64_t>(pool.normal_pixels()),
          pool.region_count()};
}

// Calls visit(threshold, tp, fp, pro) for every distinct score, descending.
template <typename Visit>
void visit_exact(const PixelPool& pool, const PixelMetricOptions& options, Visit&& visit) {
  const auto& samples = pool.samples();
  std::vector<std::size_t> pixel_offset(samples.size() + 1, 0);
  std::vector<std::size_t> region_offset(samples.size() + 1, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    pixel_offset[i + 1] = pixel_offset[i] + samples[i].map.size();
    region_offset[i + 1] = region_offset[i] + samples[i].regions.region_count;
  }
  std::vector<std::size_t> region_size(region_offset.back() + 1, 0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& sizes = samples[i].regions.sizes;
    std::copy(sizes.begin(), sizes.end(), region_size.begin() + static_cast<std::ptrdiff_t>(region_offset[i] + 1));
  }

  // High word: inverted score key, so ascending order is descending score.
  // Low word: global region index, 0 for normal pixels.
  std::vector<std::uint64_t> packed(pixel_offset.back());
  parallel_for(samples.size(), options.threads, [&](std::size_t i) {
    const auto scores = samples[i].map.values();
    const auto labels = samples[i].regions.labels.values();
    std::uint64_t* out = packed.data() + pixel_offset[i];
    const auto base = static_cast<std::uint64_t>(region_offset[i]);
    for (std::size_t p = 0; p < scores.size(); ++p) {
      const std::uint64_t code = labels[p] ? base + labels[p] : 0;
      out[p] = (static_cast<std::uint64_t>(~sortable_key(scores[p])) << 32) | code;
    }
  });
  std::sort(packed.begin(), packed.end());

  std::vector<std::size_t> covered(region_size.size(), 0);
  const auto totals = totals_of(pool);
  const double regions = static_cast<double>(totals.regions);
  std::int64_t tp = 0, fp = 0;
  std::size_t full = 0, partial_count = 0;
  double partial = 0.0;

  for (std::size_t i = 0; i < packed.size();) {
    const std::uint32_t key = static_cast<std::uint32_t>(packed[i] >> 32);
    for (; i < packed.size() && static_cast<std::uint32_t>(packed[i] >> 32) == key; ++i) {
      const auto r = static_cast<std::size_t>(packed[i] & 0xffffffffu);
      if (r == 0) {
        ++fp;
        continue;
      }
      ++tp;
      const std::size_t size = region_size[r];
      const std::size_t c = ++covered[r];
      if (c == size) {
        ++full;
        if (size > 1) {
          --partial_count;
          partial -= static_cast<double>(size - 1) / static_cast<double>(size);
        }
      } else {
        if (c == 1) ++partial_count;
        partial += 1.0 / static_cast<double>(size);
      }
      if (partial_count == 0) partial = 0.0;
    }
    const double pro = regions > 0 ? std::clamp((static_cast<double>(full) + partial) / regions, 0.0, 1.0) : 0.0;
    visit(static_cast<double>(key_to_float(~key)), tp, fp, pro);
  }
}

// Fixed-point scale for per-pixel region weights in binned mode. Integer
// tallies make the per-image merge exact and order independent.
constexpr double kProScale = 0x1.0p40;

struct BinTally {
  explicit BinTally(std::size_t bins) : normal(bins, 0), anomalous(bins, 0), full(bins, 0), partial(bins, 0) {}
  std::vector<std::int64_t> normal;
  std::vector<std::int64_t> anomalous;
  std::vector<std::int64_t> full;    // regions whose lowest-scored pixel lands in the bin
  std::vector<__int128> partial;     // difference array of region weights

  void merge(const BinTally& o) {
    for (std::size_t b = 0; b < normal.size(); ++b) {
      normal[b] += o.normal[b];
      anomalous[b] += o.anomalous[b];
      full[b] += o.full[b];
      partial[b] += o.partial[b];
    }
  }
};

template <typename Visit>
void visit_binned(const PixelPool& pool, const PixelMetricOptions& options, Visit&& visit) {
  const auto& samples = pool.samples();
  const std::size_t bins = std::max<std::size_t>(options.bins, 1);
  float lo = std::numeric_limits<float>::infinity();
  float hi = -std::numeric_limits<float>::infinity();
  for (const auto& s : samples) {
    for (float v : s.map.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = static_cast<double>(hi) - static_cast<double>(lo);
  const double scale = span > 0 ? static_cast<double>(bins) / span : 0.0;
  auto bin_of = [&](float v) {
    const auto b = static_cast<std::size_t>((static_cast<double>(v) - lo) * scale);
    return std::min(b, bins - 1);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(samples.size())));
  std::vector<BinTally> tallies(workers, BinTally(bins));
  // Images are split into contiguous chunks, one per worker.
  parallel_for(workers, workers, [&](std::size_t w) {
    BinTally& t = tallies[w];
    const std::size_t begin = samples.size() * w / workers;
    const std::size_t end = samples.size() * (w + 1) / workers;
    std::vector<std::size_t> min_bin;
    std::vector<std::size_t> bin_cache;
    std::vector<std::int64_t> weight;
    for (std::size_t i = begin; i < end; ++i) {
      const auto scores = samples[i].map.values();
      const auto labels = samples[i].regions.labels.values();
      const auto& sizes = samples[i].regions.sizes;
      min_bin.assign(sizes.size(), bins);
      bin_cache.resize(scores.size());
      for (std::size_t p = 0; p < scores.size(); ++p) {
        const std::size_t b = bin_of(scores[p]);
        bin_cache[p] = b;
        if (labels[p] == 0) {
          ++t.normal[b];
        } else {
          ++t.anomalous[b];
          auto& m = min_bin[labels[p] - 1];
          m = std::min(m, b);
        }
      }
      weight.resize(sizes.size());
      for (std::size_t r = 0; r < sizes.size(); ++r) {
        weight[r] = std::llround(kProScale / static_cast<double>(sizes[r]));
        t.partial[min_bin[r]] -= static_cast<__int128>(weight[r]) * static_cast<__int128>(sizes[r]);
      }
      for (std::size_t p = 0; p < scores.size(); ++p) {
        if (labels[p] != 0) t.partial[bin_cache[p]] += weight[labels[p] - 1];
      }
      for (std::size_t r = 0; r < sizes.size(); ++r) ++t.full[min_bin[r]];
    }
  });
  for (std::size_t w = 1; w < tallies.size(); ++w) tallies[0].merge(tallies[w]);
  const BinTally& t = tallies[0];

  const auto totals = totals_of(pool);
  const double regions = static_cast<double>(totals.regions);
  std::int64_t tp = 0, fp = 0, full = 0;
  __int128 partial = 0;
  for (std::size_t b = bins; b-- > 0;) {
    tp += t.anomalous[b];
    fp += t.normal[b];
    full += t.full[b];
    partial += t.partial[b];
    if (t.anomalous[b] == 0 && t.normal[b] == 0) continue;
    double pro = 0.0;
    if (totals.regions > 0) {
      pro = static_cast<std::size_t>(full) == totals.regions
                ? 1.0
                : (static_cast<double>(full) + static_cast<double>(partial) / kProScale) / regions;
      pro = std::clamp(pro, 0.0, 1.0);
    }
    visit(static_cast<double>(lo) + span * static_cast<double>(b) / static_cast<double>(bins), tp, fp, pro);
  }
}


// Trapezoidal area of a curve starting at (0, 0), clipped to x <= cap.
class PartialArea {
public:
  PartialArea(double cap, bool interpolate) : cap_(cap), interpolate_(interpolate) {}

  void add(double x, double y) {
    if (done_) return;
    if (x <= cap_) {
      area_ += (x - x_) * (y_ + y) * 0.5;
      x_ = x;
      y_ = y;
      return;
    }
    if (interpolate_ && x > x_) {
      const double y_cap = y_ + (cap_ - x_) / (x - x_) * (y - y_);
      area_ += (cap_ - x_) * (y_ + y_cap) * 0.5;
    }
    done_ = true;
  }

  double normalized() const { return area_ / cap_; }

private:
  double cap_;
  bool interpolate_;
  bool done_ = false;
  double x_ = 0.0;
  double y_ = 0.0;
  double area_ = 0.0;
};

void check_cap(double cap) {
  if (!(cap > 0.0 && cap <= 1.0)) throw ValidationError("FPR cap must lie in (0, 1]");
}

template <typename Visit>
void visit_curve(const PixelPool& pool, const PixelMetricOptions& options, Visit&& visit) {
  if (pool.total_pixels() > options.exact_limit) visit_binned(pool, options, visit);
  else visit_exact(pool, options, visit);
}

}  // namespace

PixelCurve build_pixel_curve(const PixelPool& pool, const PixelMetricOptions& options) {
  PixelCurve curve;
  const auto totals = totals_of(pool);
  curve.positives = totals.positives;
  curve.negatives = totals.negatives;
  curve.regions = totals.regions;
  curve.binned = pool.total_pixels() > options.exact_limit;
  visit_curve(pool, options, [&](double t, std::int64_t tp, std::int64_t fp, double pro) {
    curve.thresholds.push_back(t);
    curve.tp.push_back(tp);
    curve.fp.push_back(fp);
    curve.pro.push_back(pro);
  });
  return curve;
}

ProCurve pro_curve(const PixelCurve& curve) {
  ProCurve out;
  out.fpr.reserve(curve.fp.size() + 1);
  out.pro.reserve(curve.fp.size() + 1);
  const double n = static_cast<double>(curve.negatives);
  for (std::size_t i = 0; i < curve.fp.size(); ++i) {
    out.fpr.push_back(n > 0 ? static_cast<double>(curve.fp[i]) / n : 0.0);
    out.pro.push_back(curve.pro[i]);
  }
  if (out.fpr.empty() || out.fpr.front() != 0.0 || out.pro.front() != 0.0) {
    out.fpr.insert(out.fpr.begin(), 0.0);
    out.pro.insert(out.pro.begin(), 0.0);
  }
  return out;
}

double normalized_partial_area(const ProCurve& curve, double cap, bool interpolate_cap) {
  check_cap(cap);
  PartialArea area(cap, interpolate_cap);
  for (std::size_t i = 0; i < curve.fpr.size(); ++i) area.add(curve.fpr[i], curve.pro[i]);
  return area.normalized();
}

MetricValue auroc_pixel(const PixelCurve& curve) {
  if (curve.positives == 0 || curve.negatives == 0) return MetricValue::unavailable(metric_names::pixel_auroc);
  const std::int64_t twice = detail::twice_roc_area(curve.tp, curve.fp);
  return MetricValue::ok(metric_names::pixel_auroc, static_cast<double>(twice) / (2.0 * static_cast<double>(curve.positives) *
                                                                                  static_cast<double>(curve.negatives)));
}

MetricValue aupro(const PixelCurve& curve, const PixelMetricOptions& options) {
  check_cap(options.fpr_cap);
  if (curve.regions == 0 || curve.negatives == 0) return MetricValue::unavailable(metric_names::pixel_aupro);
  return MetricValue::ok(metric_names::pixel_aupro,
                         normalized_partial_area(pro_curve(curve), options.fpr_cap, options.interpolate_cap));
}

MetricValue f1max_pixel(const PixelCurve& curve) {
  if (curve.positives == 0) return MetricValue::unavailable(metric_names::pixel_f1max);
  double best = 0.0;
  for (std::size_t i = 0; i < curve.tp.size(); ++i) {
    best = std::max(best, detail::f1_from_counts(curve.tp[i], curve.fp[i], curve.positives - curve.tp[i]));
  }
  return MetricValue::ok(metric_names::pixel_f1max, best);
}

MetricValue auroc_pixel(const PixelPool& pool, const PixelMetricOptions& options) {
  return evaluate_pixels(pool, options).auroc;
}

MetricValue aupro(const PixelPool& pool, const PixelMetricOptions& options) {
  return evaluate_pixels(pool, options).aupro;
}

MetricValue f1max_pixel(const PixelPool& pool, const PixelMetricOptions& options) {
  return evaluate_pixels(pool, options).f1max;
}

PixelMetrics evaluate_pixels(const PixelPool& pool, const PixelMetricOptions& options) {
  check_cap(options.fpr_cap);
  const auto totals = totals_of(pool);
  PixelMetrics out{MetricValue::unavailable(metric_names::pixel_auroc),
                   MetricValue::unavailable(metric_names::pixel_aupro),
                   MetricValue::unavailable(metric_names::pixel_f1max),
                   {}};
  if (pool.total_pixels() == 0) return out;

  std::int64_t twice_area = 0, prev_tp = 0, prev_fp = 0;
  double best_f1 = 0.0;
  PartialArea area(options.fpr_cap, options.interpolate_cap);
  const double n = static_cast<double>(totals.negatives);
  if (options.keep_curve) {
    out.curve.fpr.push_back(0.0);
    out.curve.pro.push_back(0.0);
  }
  visit_curve(pool, options, [&](double, std::int64_t tp, std::int64_t fp, double pro) {
    twice_area += (fp - prev_fp) * (tp + prev_tp);
    prev_tp = tp;
    prev_fp = fp;
    best_f1 = std::max(best_f1, detail::f1_from_counts(tp, fp, totals.positives - tp));
    const double fpr = n > 0 ? static_cast<double>(fp) / n : 0.0;
    area.add(fpr, pro);
    if (options.keep_curve && (fpr != 0.0 || pro != 0.0)) {
      out.curve.fpr.push_back(fpr);
      out.curve.pro.push_back(pro);
    }
  });

  if (totals.positives > 0 && totals.negatives > 0) {
    out.auroc = MetricValue::ok(metric_names::pixel_auroc,
                                static_cast<double>(twice_area) / (2.0 * static_cast<double>(totals.positives) * n));
  }
  if (totals.regions > 0 && totals.negatives > 0) out.aupro = MetricValue::ok(metric_names::pixel_aupro, area.normalized());
  if (totals.positives > 0) out.f1max = MetricValue::ok(metric_names::pixel_f1max, best_f1);
  return out;
}

void write_pro_curve_csv(const std::filesystem::path& path, const ProCurve& curve) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "fpr,pro\n";
  char line[64];
  for (std::size_t i = 0; i < curve.fpr.size(); ++i) {
    std::snprintf(line, sizeof line, "%.10g,%.10g\n", curve.fpr[i], curve.pro[i]);
    out << line;
  }
}

}  // namespace adeval
