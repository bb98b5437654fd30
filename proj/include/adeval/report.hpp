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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "adeval/metric.hpp"

namespace adeval {

inline constexpr std::string_view kResultsSchema = "adeval.results/v1";

/// Key used for results that carry no seed (legacy files, single runs).
inline constexpr std::string_view kDefaultSeed = "0";

using MetricMap = std::map<std::string, MetricValue>;    // metric name -> value
using SeedMap = std::map<std::string, MetricMap>;        // seed -> metrics
using CategoryMap = std::map<std::string, SeedMap>;      // category -> seeds
using DatasetMap = std::map<std::string, CategoryMap>;   // dataset -> categories
using MethodMap = std::map<std::string, DatasetMap>;     // method -> datasets

struct ResultsTree {
  MethodMap methods;
  /// Free-form run description: resolution, protocol, drift flag.
  nlohmann::json metadata = nlohmann::json::object();

  /// Inserts or overwrites one value. Throws on unregistered metric names.
  void set(const std::string& method, const std::string& dataset, const std::string& category,
           const std::string& seed, const MetricValue& value);

  const CategoryMap* categories(const std::string& method, const std::string& dataset) const;

  friend bool operator==(const ResultsTree&, const ResultsTree&) = default;
};

nlohmann::json to_json(const ResultsTree& tree);

/// Accepts the versioned schema and the legacy layout
/// method -> dataset -> category -> [seed ->] metric -> number.
/// Legacy files whose values exceed 1 are read as percentages.
ResultsTree results_from_json(const nlohmann::json& doc);

ResultsTree load_results(const std::filesystem::path& path);
void save_results(const ResultsTree& tree, const std::filesystem::path& path);

/// Union of both trees. Identical paths must carry identical values.
ResultsTree merge_trees(const ResultsTree& a, const ResultsTree& b);

struct SeedStats {
  std::optional<double> mean;
  std::optional<double> stddev;  // sample standard deviation, needs >= 2 seeds
  std::size_t seeds = 0;

  friend bool operator==(const SeedStats&, const SeedStats&) = default;
};

using CategoryStats = std::map<std::string, std::map<std::string, SeedStats>>;  // category -> metric -> stats

/// Throws when a metric is available for some seeds of a category only.
CategoryStats merge_seeds(const ResultsTree& tree, const std::string& method, const std::string& dataset);

/// Unweighted mean over categories of the seed means. When `expected` is
/// given, every listed category must be present.
MetricMap aggregate_dataset(const ResultsTree& tree, const std::string& method, const std::string& dataset,
                            const std::vector<std::string>& expected = {});

/// Mean of dataset means. Datasets where a metric is unavailable are left
/// out of that metric's mean.
MetricMap aggregate_datasets(const ResultsTree& tree, const std::string& method,
                             const std::vector<std::string>& datasets);

struct ColumnSpec {
  std::string label;
  std::vector<std::string> datasets;     // more than one means a mean of dataset means
  std::optional<std::string> category;   // single category instead of the dataset mean
};

struct TableSpec {
  std::vector<std::string> methods;
  std::vector<ColumnSpec> columns;
  std::vector<std::string> metrics;
  bool bold_max = false;
};

/// Column spec text: "BTAD", "D=RIADs+BTech+VAD" or "MVTec/bottle".
ColumnSpec parse_column(std::string_view text);

struct Table {
  std::vector<std::string> header;  // first entry is the row label column
  std::vector<std::string> metrics;
  std::vector<std::string> row_labels;
  /// cells[row][column][metric]
  std::vector<std::vector<std::vector<std::optional<double>>>> cells;
};

Table build_table(const ResultsTree& tree, const TableSpec& spec);

/// Slash-joined percentages with one decimal, "—" for unavailable values.
std::string render_markdown(const Table& table, bool bold_max = false);
/// One column per (column, metric) pair, empty fields for unavailable values.
std::string render_csv(const Table& table);

std::string render_table(const ResultsTree& tree, const TableSpec& spec);

std::string format_cell(const std::vector<std::optional<double>>& values);

}  // namespace adeval
