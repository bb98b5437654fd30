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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace adeval {

enum class Split { train, val, test };
enum class Label { good, bad };

std::string_view to_string(Split split) noexcept;
std::string_view to_string(Label label) noexcept;
Split parse_split(std::string_view text);
Label parse_label(std::string_view text);

/// One image of a dataset category and the files that belong to it.
struct SampleRecord {
  std::string sample_id;
  Split split = Split::test;
  Label label = Label::good;
  std::optional<std::string> defect_type;
  std::filesystem::path image_path;
  std::optional<std::filesystem::path> map_path;
  std::optional<std::filesystem::path> mask_path;
  std::uint32_t resolution = 256;  // pixels per side

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Declarative index of one dataset category.
struct DatasetManifest {
  std::string category;
  bool has_pixel_labels = false;
  std::vector<SampleRecord> samples;

  const SampleRecord* find(std::string_view sample_id) const;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

nlohmann::json to_json(const DatasetManifest& manifest);
/// Throws ValidationError on a structurally malformed document.
DatasetManifest manifest_from_json(const nlohmann::json& doc);

/// Throws IoError if the file cannot be read, ValidationError if it does not
/// parse as a manifest.
DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Serialized form used for determinism checks and file output.
std::string dump_manifest(const DatasetManifest& manifest);

struct Violation {
  std::string sample_id;  // empty for manifest-level rules
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationOptions {
  /// Directory relative file paths are resolved against. Mask contents are
  /// only inspected when this is set.
  std::optional<std::filesystem::path> base_dir;
  /// Every test sample must carry a map_path.
  bool require_maps = false;
  /// Require at least one good and one bad test sample.
  bool require_both_test_classes = true;
};

/// Checks every manifest invariant. Returns an empty list when all hold.
std::vector<Violation> validate_manifest(const DatasetManifest& manifest, const ValidationOptions& options = {});

/// Resolves a manifest-relative path against a root directory.
std::filesystem::path resolve_path(const std::filesystem::path& root, const std::filesystem::path& path);

}  // namespace adeval
