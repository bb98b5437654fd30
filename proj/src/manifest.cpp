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

#include "adeval/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "adeval/error.hpp"
#include "adeval/map_io.hpp"

namespace adeval {

using nlohmann::json;

std::string_view to_string(Split split) noexcept {
  switch (split) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "test";
}

std::string_view to_string(Label label) noexcept {
  return label == Label::good ? "good" : "bad";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "val") return Split::val;
  if (text == "test") return Split::test;
  throw ValidationError("unknown split '" + std::string(text) + "'");
}

Label parse_label(std::string_view text) {
  if (text == "good") return Label::good;
  if (text == "bad") return Label::bad;
  throw ValidationError("unknown label '" + std::string(text) + "'");
}

const SampleRecord* DatasetManifest::find(std::string_view sample_id) const {
  for (const auto& s : samples) {
    if (s.sample_id == sample_id) return &s;
  }
  return nullptr;
}

json to_json(const DatasetManifest& manifest) {
  json samples = json::array();
  for (const auto& s : manifest.samples) {
    json entry = {
        {"sample_id", s.sample_id},
        {"split", to_string(s.split)},
        {"label", to_string(s.label)},
        {"image_path", s.image_path.generic_string()},
        {"resolution", s.resolution},
    };
    if (s.defect_type) entry["defect_type"] = *s.defect_type;
    if (s.map_path) entry["map_path"] = s.map_path->generic_string();
    if (s.mask_path) entry["mask_path"] = s.mask_path->generic_string();
    samples.push_back(std::move(entry));
  }
  return {{"category", manifest.category}, {"has_pixel_labels", manifest.has_pixel_labels}, {"samples", samples}};
}

namespace {

template <typename T>
T required(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(context + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ValidationError(context + ": field '" + key + "' has the wrong type");
  }
}

std::optional<std::string> optional_string(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(context + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

DatasetManifest manifest_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("manifest must be a JSON object");
  DatasetManifest m;
  m.category = required<std::string>(doc, "category", "manifest");
  m.has_pixel_labels = required<bool>(doc, "has_pixel_labels", "manifest");
  const auto samples = doc.find("samples");
  if (samples == doc.end() || !samples->is_array()) throw ValidationError("manifest: 'samples' must be an array");
  m.samples.reserve(samples->size());
  std::size_t index = 0;
  for (const auto& e : *samples) {
    const std::string ctx = "samples[" + std::to_string(index++) + "]";
    if (!e.is_object()) throw ValidationError(ctx + " must be an object");
    SampleRecord s;
    s.sample_id = required<std::string>(e, "sample_id", ctx);
    s.split = parse_split(required<std::string>(e, "split", ctx));
    s.label = parse_label(required<std::string>(e, "label", ctx));
    s.defect_type = optional_string(e, "defect_type", ctx);
    s.image_path = required<std::string>(e, "image_path", ctx);
    if (auto p = optional_string(e, "map_path", ctx)) s.map_path = *p;
    if (auto p = optional_string(e, "mask_path", ctx)) s.mask_path = *p;
    const auto res = required<std::int64_t>(e, "resolution", ctx);
    if (res <= 0 || res > UINT32_MAX) throw ValidationError(ctx + ": resolution must be a positive integer", s.sample_id);
    s.resolution = static_cast<std::uint32_t>(res);
    m.samples.push_back(std::move(s));
  }
  return m;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read manifest " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("manifest " + path.string() + " is not valid JSON: " + e.what());
  }
  return manifest_from_json(doc);
}

std::string dump_manifest(const DatasetManifest& manifest) {
  return to_json(manifest).dump(2) + "\n";
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << dump_manifest(manifest);
  if (!out) throw IoError("failed writing manifest " + path.string());
}

std::filesystem::path resolve_path(const std::filesystem::path& root, const std::filesystem::path& path) {
  if (path.is_absolute() || root.empty()) return path;
  return root / path;
}

std::vector<Violation> validate_manifest(const DatasetManifest& manifest, const ValidationOptions& options) {
  std::vector<Violation> out;
  std::unordered_set<std::string> seen;
  std::set<std::string> reported_duplicates;
  bool any_bad_test_mask = false;
  std::size_t test_good = 0;
  std::size_t test_bad = 0;

  for (const auto& s : manifest.samples) {
    if (s.sample_id.empty()) out.push_back({s.sample_id, "empty sample_id"});
    if (!seen.insert(s.sample_id).second && reported_duplicates.insert(s.sample_id).second) {
      out.push_back({s.sample_id, "duplicate sample_id"});
    }
    if (s.resolution == 0) out.push_back({s.sample_id, "resolution must be positive"});

    if (s.split == Split::test) {
      (s.label == Label::good ? test_good : test_bad) += 1;
      if (s.label == Label::bad && s.mask_path) any_bad_test_mask = true;
      if (options.require_maps && !s.map_path) out.push_back({s.sample_id, "test sample has no map_path"});
    }

    if (s.label == Label::good && s.mask_path && options.base_dir) {
      const auto path = resolve_path(*options.base_dir, *s.mask_path);
      try {
        const PixelMask mask = load_mask(path);
        for (auto v : mask.values()) {
          if (v != 0) {
            out.push_back({s.sample_id, "good sample has anomalous mask pixels"});
            break;
          }
        }
      } catch (const Error& e) {
        out.push_back({s.sample_id, std::string("mask unreadable: ") + e.what()});
      }
    }
  }

  if (manifest.has_pixel_labels != any_bad_test_mask) {
    out.push_back({"", manifest.has_pixel_labels ? "has_pixel_labels is true but no bad test sample has a mask"
                                                 : "has_pixel_labels is false but a bad test sample has a mask"});
  }
  if (options.require_both_test_classes) {
    if (test_good == 0) out.push_back({"", "test split has no good sample"});
    if (test_bad == 0) out.push_back({"", "test split has no bad sample"});
  }
  return out;
}

}  // namespace adeval
