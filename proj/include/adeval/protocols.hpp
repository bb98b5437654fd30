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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "adeval/manifest.hpp"
#include "adeval/rng.hpp"

namespace adeval {

enum class Protocol { contaminate, supervised_split, validation_split };

std::string_view to_string(Protocol protocol) noexcept;
Protocol parse_protocol(std::string_view text);

/// Provenance of one protocol application. Together with the input manifest
/// it reproduces the output manifest exactly (see replay()).
struct ProtocolRecord {
  Protocol protocol = Protocol::contaminate;
  Seed seed;
  /// Samples whose split changed, in selection order.
  std::vector<std::string> moved_ids;
  /// Protocol inputs plus derived counts. contaminate also lists the
  /// deleted train normals under "removed_ids".
  nlohmann::json parameters = nlohmann::json::object();

  friend bool operator==(const ProtocolRecord&, const ProtocolRecord&) = default;
};

nlohmann::json to_json(const ProtocolRecord& record);
ProtocolRecord record_from_json(const nlohmann::json& doc);
void save_record(const ProtocolRecord& record, const std::filesystem::path& path);
ProtocolRecord load_record(const std::filesystem::path& path);

struct ProtocolResult {
  DatasetManifest manifest;
  ProtocolRecord record;
};

/// Label-noise setup: k = round(percent * T) of the T train normals are
/// deleted and k bad test samples are moved into train, keeping their bad
/// label. Train size is preserved, test shrinks by k.
ProtocolResult contaminate(const DatasetManifest& manifest, double percent, Seed seed);

/// Moves n bad test samples into train, drawn uniformly over all defect
/// types. Manifests whose train split already holds bad samples pass
/// through unchanged.
ProtocolResult supervised_split(const DatasetManifest& manifest, std::size_t n_anomalous, Seed seed);

/// Marks round(fraction * |train|) train samples as val, stratified by
/// label when train contains bad samples. Test is untouched.
ProtocolResult validation_split(const DatasetManifest& manifest, double fraction, Seed seed);

/// Applies a record to the manifest it was produced from, without drawing
/// any random numbers. Throws ValidationError if the record references ids
/// that are missing or in the wrong split.
DatasetManifest replay(const DatasetManifest& original, const ProtocolRecord& record);

/// Validation metric per training epoch.
struct EpochTrace {
  std::string metric_name = "im.AUROC";
  std::vector<std::pair<std::size_t, double>> epochs;  // (epoch index, val metric)
};

/// Early stopping. Returns the best epoch seen before `patience` consecutive
/// epochs pass without a strict improvement (earliest peak wins ties).
/// Without a patience the run never stops early and the last epoch is
/// returned.
std::size_t select_epoch(const EpochTrace& trace, std::optional<std::size_t> patience);

}  // namespace adeval
