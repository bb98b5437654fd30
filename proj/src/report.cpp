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

#include "adeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "adeval/error.hpp"
#include "adeval/numeric.hpp"

namespace adeval {

using nlohmann::json;

namespace {

std::string canonical_or_throw(std::string_view name) {
  auto canonical = canonical_metric_name(name);
  if (!canonical) throw ValidationError("unknown metric '" + std::string(name) + "'");
  return *canonical;
}

std::string path_of(const std::string& method, const std::string& dataset, const std::string& category = {}) {
  std::string p = method + "/" + dataset;
  if (!category.empty()) p += "/" + category;
  return p;
}

}  // namespace

void ResultsTree::set(const std::string& method, const std::string& dataset, const std::string& category,
                      const std::string& seed, const MetricValue& value) {
  const std::string name = canonical_or_throw(value.name);
  methods[method][dataset][category][seed][name] = MetricValue{name, value.value};
}

const CategoryMap* ResultsTree::categories(const std::string& method, const std::string& dataset) const {
  auto m = methods.find(method);
  if (m == methods.end()) return nullptr;
  auto d = m->second.find(dataset);
  return d == m->second.end() ? nullptr : &d->second;
}

json to_json(const ResultsTree& tree) {
  json results = json::object();
  for (const auto& [method, datasets] : tree.methods) {
    for (const auto& [dataset, categories] : datasets) {
      for (const auto& [category, seeds] : categories) {
        for (const auto& [seed, metrics] : seeds) {
          json& node = results[method][dataset][category][seed];
          node = json::object();
          for (const auto& [name, mv] : metrics) {
            node[name] = mv.value ? json(*mv.value) : json(nullptr);
          }
        }
      }
    }
  }
  return {{"schema", kResultsSchema}, {"metadata", tree.metadata}, {"results", results}};
}

namespace {

bool is_metric_level(const json& node) {
  if (!node.is_object() || node.empty()) return false;
  for (const auto& [key, value] : node.items()) {
    if (!canonical_metric_name(key) || !(value.is_number() || value.is_null())) return false;
  }
  return true;
}

void read_metrics(ResultsTree& tree, const std::string& method, const std::string& dataset,
                  const std::string& category, const std::string& seed, const json& node, double scale) {
  if (!node.is_object()) throw ValidationError("metrics of " + path_of(method, dataset, category) + " are not an object");
  auto& metrics = tree.methods[method][dataset][category][seed];
  for (const auto& [key, value] : node.items()) {
    const std::string name = canonical_or_throw(key);
    if (value.is_null()) {
      metrics[name] = MetricValue::unavailable(name);
    } else if (value.is_number()) {
      metrics[name] = MetricValue::ok(name, value.get<double>() / scale);
    } else {
      throw ValidationError("value of " + name + " at " + path_of(method, dataset, category) + " is not a number");
    }
  }
}

double legacy_scale(const json& doc) {
  bool percent = false;
  std::function<void(const json&)> scan = [&](const json& n) {
    if (n.is_number() && n.get<double>() > 1.0) percent = true;
    if (n.is_structured()) {
      for (const auto& child : n) scan(child);
    }
  };
  scan(doc);
  return percent ? 100.0 : 1.0;
}

}  // namespace

ResultsTree results_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("results document must be a JSON object");
  ResultsTree tree;
  const bool versioned = doc.contains("schema");
  if (versioned && doc.at("schema") != kResultsSchema) {
    throw ValidationError("unsupported results schema " + doc.at("schema").dump());
  }
  if (versioned && doc.contains("metadata")) tree.metadata = doc.at("metadata");
  const json& results = versioned ? doc.at("results") : doc;
  const double scale = versioned ? 1.0 : legacy_scale(doc);

  for (const auto& [method, datasets] : results.items()) {
    if (!datasets.is_object()) throw ValidationError("method '" + method + "' is not an object");
    for (const auto& [dataset, categories] : datasets.items()) {
      if (!categories.is_object()) throw ValidationError("dataset '" + path_of(method, dataset) + "' is not an object");
      for (const auto& [category, node] : categories.items()) {
        if (!versioned && is_metric_level(node)) {
          read_metrics(tree, method, dataset, category, std::string(kDefaultSeed), node, scale);
          continue;
        }
        if (!node.is_object()) throw ValidationError("category '" + path_of(method, dataset, category) + "' is not an object");
        for (const auto& [seed, metrics] : node.items()) read_metrics(tree, method, dataset, category, seed, metrics, scale);
      }
    }
  }
  return tree;
}

ResultsTree load_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read results file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed results file " + path.string() + ": " + e.what());
  }
  return results_from_json(doc);
}

void save_results(const ResultsTree& tree, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write results file " + path.string());
  out << to_json(tree).dump(2) << "\n";
  if (!out) throw IoError("failed writing results file " + path.string());
}

ResultsTree merge_trees(const ResultsTree& a, const ResultsTree& b) {
  ResultsTree out = a;
  for (const auto& [key, value] : b.metadata.items()) {
    if (out.metadata.contains(key) && out.metadata[key] != value) {
      throw ValidationError("conflicting metadata '" + key + "'");
    }
    out.metadata[key] = value;
  }
  for (const auto& [method, datasets] : b.methods) {
    for (const auto& [dataset, categories] : datasets) {
      for (const auto& [category, seeds] : categories) {
        for (const auto& [seed, metrics] : seeds) {
          auto& target = out.methods[method][dataset][category][seed];
          for (const auto& [name, mv] : metrics) {
            auto it = target.find(name);
            if (it != target.end() && it->second != mv) {
              throw ValidationError("conflicting values for " + name + " at " + path_of(method, dataset, category) +
                                    " seed " + seed);
            }
            target[name] = mv;
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

CategoryStats merge_seeds(const ResultsTree& tree, const std::string& method, const std::string& dataset) {
  const CategoryMap* categories = tree.categories(method, dataset);
  if (!categories) throw ValidationError("no results for " + path_of(method, dataset));

  CategoryStats stats;
  for (const auto& [category, seeds] : *categories) {
    if (seeds.empty()) throw ValidationError("no seeds for " + path_of(method, dataset, category));
    std::set<std::string> names;
    for (const auto& [seed, metrics] : seeds) {
      for (const auto& [name, mv] : metrics) names.insert(name);
    }
    for (const auto& name : names) {
      std::vector<double> values;
      std::size_t unavailable = 0;
      for (const auto& [seed, metrics] : seeds) {
        auto it = metrics.find(name);
        if (it == metrics.end()) {
          throw ValidationError(name + " missing for seed " + seed + " at " + path_of(method, dataset, category));
        }
        if (it->second.value) {
          values.push_back(*it->second.value);
        } else {
          ++unavailable;
        }
      }
      if (unavailable && !values.empty()) {
        throw ValidationError(name + " is available for some seeds only at " + path_of(method, dataset, category));
      }
      SeedStats s;
      s.seeds = seeds.size();
      if (!values.empty()) {
        double sum = 0.0;
        for (double v : values) sum += v;
        const double mean = sum / static_cast<double>(values.size());
        s.mean = mean;
        if (values.size() >= 2) {
          double ss = 0.0;
          for (double v : values) ss += (v - mean) * (v - mean);
          s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        }
      }
      stats[category][name] = s;
    }
  }
  return stats;
}

MetricMap aggregate_dataset(const ResultsTree& tree, const std::string& method, const std::string& dataset,
                            const std::vector<std::string>& expected) {
  const CategoryStats stats = merge_seeds(tree, method, dataset);
  std::vector<std::string> missing;
  for (const auto& c : expected) {
    if (!stats.contains(c)) missing.push_back(c);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ValidationError("missing categories for " + path_of(method, dataset) + ": " + list);
  }

  std::set<std::string> names;
  for (const auto& [category, metrics] : stats) {
    for (const auto& [name, s] : metrics) names.insert(name);
  }
  MetricMap out;
  for (const auto& name : names) {
    double sum = 0.0;
    std::size_t available = 0;
    for (const auto& [category, metrics] : stats) {
      auto it = metrics.find(name);
      if (it == metrics.end()) throw ValidationError(name + " missing for " + path_of(method, dataset, category));
      if (it->second.mean) {
        sum += *it->second.mean;
        ++available;
      }
    }
    if (available == 0) {
      out[name] = MetricValue::unavailable(name);
    } else if (available != stats.size()) {
      throw ValidationError(name + " is available for some categories only in " + path_of(method, dataset));
    } else {
      out[name] = MetricValue::ok(name, sum / static_cast<double>(available));
    }
  }
  return out;
}

namespace {

MetricMap mean_of_datasets(const std::vector<MetricMap>& per_dataset) {
  std::map<std::string, std::pair<double, std::size_t>> acc;
  for (const auto& metrics : per_dataset) {
    for (const auto& [name, mv] : metrics) {
      auto& [sum, n] = acc[name];
      if (mv.value) {
        sum += *mv.value;
        ++n;
      }
    }
  }
  MetricMap out;
  for (const auto& [name, sn] : acc) {
    out[name] = sn.second ? MetricValue::ok(name, sn.first / static_cast<double>(sn.second)) : MetricValue::unavailable(name);
  }
  return out;
}

std::vector<std::string> category_union(const ResultsTree& tree, const std::vector<std::string>& methods,
                                        const std::string& dataset) {
  std::set<std::string> names;
  for (const auto& method : methods) {
    if (const CategoryMap* cats = tree.categories(method, dataset)) {
      for (const auto& [category, seeds] : *cats) names.insert(category);
    }
  }
  return {names.begin(), names.end()};
}

}  // namespace

MetricMap aggregate_datasets(const ResultsTree& tree, const std::string& method,
                             const std::vector<std::string>& datasets) {
  std::vector<MetricMap> per_dataset;
  for (const auto& d : datasets) per_dataset.push_back(aggregate_dataset(tree, method, d));
  return mean_of_datasets(per_dataset);
}

// ---------------------------------------------------------------------------

ColumnSpec parse_column(std::string_view text) {
  ColumnSpec col;
  std::string body(text);
  if (auto eq = body.find('='); eq != std::string::npos) {
    col.label = body.substr(0, eq);
    body = body.substr(eq + 1);
    std::stringstream ss(body);
    for (std::string part; std::getline(ss, part, '+');) {
      if (!part.empty()) col.datasets.push_back(part);
    }
  } else if (auto slash = body.find('/'); slash != std::string::npos) {
    col.label = body;
    col.datasets.push_back(body.substr(0, slash));
    col.category = body.substr(slash + 1);
  } else {
    col.label = body;
    col.datasets.push_back(body);
  }
  if (col.label.empty() || col.datasets.empty() || (col.category && col.category->empty())) {
    throw ValidationError("malformed column spec '" + std::string(text) + "'");
  }
  return col;
}

Table build_table(const ResultsTree& tree, const TableSpec& spec) {
  Table table;
  for (const auto& m : spec.metrics) table.metrics.push_back(canonical_or_throw(m));
  table.header.push_back("Method");
  for (const auto& col : spec.columns) table.header.push_back(col.label);

  for (const auto& method : spec.methods) {
    if (!tree.methods.contains(method)) throw ValidationError("no results for method '" + method + "'");
    table.row_labels.push_back(method);
    auto& row = table.cells.emplace_back();
    for (const auto& col : spec.columns) {
      MetricMap values;
      if (col.category) {
        const CategoryStats stats = merge_seeds(tree, method, col.datasets.front());
        auto it = stats.find(*col.category);
        if (it == stats.end()) throw ValidationError("no results for " + path_of(method, col.datasets.front(), *col.category));
        for (const auto& [name, s] : it->second) values[name] = MetricValue{name, s.mean};
      } else {
        std::vector<MetricMap> per_dataset;
        for (const auto& d : col.datasets) {
          per_dataset.push_back(aggregate_dataset(tree, method, d, category_union(tree, spec.methods, d)));
        }
        values = per_dataset.size() == 1 ? per_dataset.front() : mean_of_datasets(per_dataset);
      }
      auto& cell = row.emplace_back();
      for (const auto& name : table.metrics) {
        auto it = values.find(name);
        if (it == values.end()) throw ValidationError("no " + name + " value for " + method + " in column " + col.label);
        cell.push_back(it->second.value);
      }
    }
  }
  return table;
}

std::string format_cell(const std::vector<std::optional<double>>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += "/";
    out += values[i] ? format_percent(*values[i]) : "—";
  }
  return out;
}

std::string render_markdown(const Table& table, bool bold_max) {
  std::ostringstream out;
  out << "|";
  for (const auto& h : table.header) out << " " << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < table.header.size(); ++i) out << "---|";
  out << "\n";

  const std::size_t ncols = table.header.empty() ? 0 : table.header.size() - 1;
  // Column maxima compare rounded values so printed ties are all marked.
  std::vector<std::vector<std::optional<double>>> best(ncols, std::vector<std::optional<double>>(table.metrics.size()));
  for (const auto& row : table.cells) {
    for (std::size_t c = 0; c < ncols; ++c) {
      for (std::size_t m = 0; m < row[c].size(); ++m) {
        if (!row[c][m]) continue;
        const double r = rounded_percent(*row[c][m]);
        if (!best[c][m] || r > *best[c][m]) best[c][m] = r;
      }
    }
  }

  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    out << "| " << table.row_labels[r] << " |";
    for (std::size_t c = 0; c < ncols; ++c) {
      const auto& cell = table.cells[r][c];
      std::string text;
      for (std::size_t m = 0; m < cell.size(); ++m) {
        if (m) text += "/";
        if (!cell[m]) {
          text += "—";
          continue;
        }
        const std::string v = format_percent(*cell[m]);
        text += bold_max && rounded_percent(*cell[m]) == best[c][m] ? "**" + v + "**" : v;
      }
      out << " " << text << " |";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render_csv(const Table& table) {
  std::ostringstream out;
  out << csv_field(table.header.empty() ? "Method" : table.header.front());
  for (std::size_t c = 1; c < table.header.size(); ++c) {
    for (const auto& m : table.metrics) out << "," << csv_field(table.header[c] + " " + m);
  }
  out << "\n";
  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    out << csv_field(table.row_labels[r]);
    for (const auto& cell : table.cells[r]) {
      for (const auto& v : cell) {
        out << ",";
        if (v) out << format_percent(*v);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string render_table(const ResultsTree& tree, const TableSpec& spec) {
  return render_markdown(build_table(tree, spec), spec.bold_max);
}

}  // namespace adeval
