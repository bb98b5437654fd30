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

#include "adeval/scoring.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "adeval/error.hpp"
#include "adeval/image_metrics.hpp"
#include "adeval/parallel.hpp"

namespace adeval {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

}  // namespace

std::map<std::string, double> read_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read scores file " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "sample_id,score") {
    throw ValidationError("scores file must start with header 'sample_id,score'");
  }
  std::map<std::string, double> scores;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw ValidationError("line " + std::to_string(lineno) + ": expected sample_id,score");
    const std::string id = trim(line.substr(0, comma));
    const std::string text = trim(line.substr(comma + 1));
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(text.c_str(), &end);
    if (id.empty() || text.empty() || *end != '\0' || errno == ERANGE) {
      throw ValidationError("line " + std::to_string(lineno) + ": malformed score", id);
    }
    if (!std::isfinite(value)) throw ValidationError("non-finite score", id);
    if (!scores.emplace(id, value).second) throw ValidationError("duplicate sample_id in scores", id);
  }
  return scores;
}

namespace {

template <typename Fn>
auto with_sample(const std::string& id, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    if (e.sample_id()) throw;
    throw IoError(e.what(), id);
  } catch (const ValidationError& e) {
    if (e.sample_id()) throw;
    throw ValidationError(e.what(), id);
  }
}

}  // namespace

CategoryScores score_category(const DatasetManifest& manifest, const std::map<std::string, double>& scores,
                              const ScoreOptions& options) {
  std::vector<const SampleRecord*> test;
  for (const auto& s : manifest.samples) {
    if (s.split == Split::test) test.push_back(&s);
  }

  LabeledScores ls;
  for (const auto* s : test) {
    auto it = scores.find(s->sample_id);
    if (it == scores.end()) throw ValidationError("no score for test sample", s->sample_id);
    ls.add(it->second, s->label);
  }

  CategoryScores out;
  out.metrics.push_back(auroc(ls));
  out.metrics.push_back(f1max(ls));
  out.metrics.push_back(pg_at(ls, options.pg_budget));
  out.metrics.push_back(pb_at(ls, options.pb_budget));

  if (!manifest.has_pixel_labels) {
    out.metrics.push_back(MetricValue::unavailable(metric_names::pixel_auroc));
    out.metrics.push_back(MetricValue::unavailable(metric_names::pixel_aupro));
    out.metrics.push_back(MetricValue::unavailable(metric_names::pixel_f1max));
    return out;
  }

  // Maps and masks load in parallel; the pool is filled in manifest order.
  std::vector<const SampleRecord*> pooled;
  for (const auto* s : test) {
    if (!s->map_path) throw ValidationError("test sample has no map_path", s->sample_id);
    if (!s->mask_path && s->label == Label::bad) {
      out.skipped.push_back(s->sample_id);
      continue;
    }
    pooled.push_back(s);
  }
  std::vector<AnomalyMap> maps(pooled.size());
  std::vector<std::optional<PixelMask>> masks(pooled.size());
  parallel_for(pooled.size(), options.pixel.threads, [&](std::size_t i) {
    const SampleRecord& s = *pooled[i];
    with_sample(s.sample_id, [&] {
      maps[i] = load_map(resolve_path(options.maps_root, *s.map_path));
      if (s.mask_path) masks[i] = load_mask(resolve_path(options.data_root, *s.mask_path));
      return 0;
    });
  });

  PixelPool pool;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    const std::string& id = pooled[i]->sample_id;
    if (masks[i]) {
      with_sample(id, [&] {
        pool.add(id, std::move(maps[i]), std::move(*masks[i]));
        return 0;
      });
    } else {
      pool.add_normal(id, std::move(maps[i]));
    }
  }

  PixelMetricOptions pixel = options.pixel;
  pixel.keep_curve = options.curve_csv.has_value();
  PixelMetrics pm = evaluate_pixels(pool, pixel);
  out.metrics.push_back(pm.auroc);
  out.metrics.push_back(pm.aupro);
  out.metrics.push_back(pm.f1max);
  if (options.curve_csv) write_pro_curve_csv(*options.curve_csv, pm.curve);
  return out;
}

}  // namespace adeval
