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

// adeval: command-line front end. stdout carries only the artifact,
// diagnostics and errors go to stderr.
//
// Exit codes: 0 success, 2 validation error, 3 I/O error, 4 internal error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adeval/drift.hpp"
#include "adeval/error.hpp"
#include "adeval/manifest.hpp"
#include "adeval/parallel.hpp"
#include "adeval/protocols.hpp"
#include "adeval/report.hpp"
#include "adeval/scoring.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kIo = 3, kInternal = 4 };

int report_error(std::string_view kind, const std::string& message, const std::optional<std::string>& sample_id = {}) {
  json err = {{"kind", kind}, {"message", message}};
  if (sample_id) err["sample_id"] = *sample_id;
  std::cerr << json{{"error", err}}.dump() << "\n";
  if (kind == "validation") return kValidation;
  if (kind == "io") return kIo;
  return kInternal;
}

void write_artifact(const std::optional<fs::path>& out, const std::string& text) {
  if (!out) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  if (out->has_parent_path()) fs::create_directories(out->parent_path());
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw adeval::IoError("cannot write " + out->string());
  f << text;
  if (!f) throw adeval::IoError("failed writing " + out->string());
}

fs::path sidecar_path(const fs::path& manifest_out) {
  fs::path p = manifest_out;
  p.replace_extension(".record.json");
  return p;
}

adeval::DatasetManifest read_manifest(const fs::path& path) {
  adeval::DatasetManifest m = adeval::load_manifest(path);
  adeval::ValidationOptions vo;
  vo.require_both_test_classes = false;
  const auto violations = adeval::validate_manifest(m, vo);
  if (!violations.empty()) {
    throw adeval::ValidationError("manifest violates rule: " + violations.front().rule,
                                  violations.front().sample_id.empty() ? std::nullopt
                                                                       : std::optional(violations.front().sample_id));
  }
  return m;
}

// Protocol commands print the manifest and the record together unless
// --out is given, in which case the record goes to a sidecar file.
void emit_protocol(const adeval::ProtocolResult& result, const std::optional<fs::path>& out) {
  if (!out) {
    write_artifact(out, json{{"manifest", adeval::to_json(result.manifest)}, {"record", adeval::to_json(result.record)}}
                            .dump(2) + "\n");
    return;
  }
  write_artifact(out, adeval::dump_manifest(result.manifest));
  adeval::save_record(result.record, sidecar_path(*out));
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, sep);) {
    if (!p.empty()) parts.push_back(p);
  }
  return parts;
}

struct Args {
  fs::path manifest;
  fs::path scores;
  std::optional<fs::path> maps_root;
  std::optional<fs::path> data_root;
  std::uint64_t seed = 0;
  double percent = 0.0;
  std::size_t n_anomalous = 0;
  double fraction = 0.10;
  double fpr_cap = 0.3;
  double pg_budget = 0.02;
  double pb_budget = 0.02;
  std::size_t bins = 100000;
  std::size_t exact_limit = std::size_t{1} << 26;
  bool truncate_cap = false;
  std::optional<fs::path> curve_out;
  std::optional<fs::path> out;
  std::string format = "json";
  std::string method = "method";
  std::optional<std::string> dataset;
  fs::path corpus;
  fs::path record;
  std::vector<fs::path> results;
  std::string methods;
  std::string columns;
  std::string metrics = "im.AUROC/im.PG2/pix.AUPRO/pix.F1Max";
  bool bold = false;
  bool require_maps = false;
};

int cmd_score(const Args& a) {
  const adeval::DatasetManifest manifest = read_manifest(a.manifest);
  const auto scores = adeval::read_scores_csv(a.scores);
  const fs::path manifest_dir = a.manifest.has_parent_path() ? a.manifest.parent_path() : fs::path(".");

  adeval::ScoreOptions opt;
  opt.maps_root = a.maps_root.value_or(manifest_dir);
  opt.data_root = a.data_root.value_or(manifest_dir);
  opt.pg_budget = a.pg_budget;
  opt.pb_budget = a.pb_budget;
  opt.pixel.fpr_cap = a.fpr_cap;
  opt.pixel.bins = a.bins;
  opt.pixel.exact_limit = a.exact_limit;
  opt.pixel.interpolate_cap = !a.truncate_cap;
  opt.pixel.threads = adeval::worker_threads_from_env();
  opt.curve_csv = a.curve_out;

  const adeval::CategoryScores result = adeval::score_category(manifest, scores, opt);
  for (const auto& id : result.skipped) {
    std::cerr << json{{"warning", "bad sample without mask skipped in pixel metrics"}, {"sample_id", id}}.dump() << "\n";
  }

  adeval::ResultsTree tree;
  const std::string dataset = a.dataset.value_or(manifest.category);
  for (const auto& mv : result.metrics) tree.set(a.method, dataset, manifest.category, std::to_string(a.seed), mv);
  for (const auto& s : manifest.samples) {
    if (s.split == adeval::Split::test) {
      tree.metadata["resolution"] = s.resolution;
      break;
    }
  }
  tree.metadata["fpr_cap"] = a.fpr_cap;
  tree.metadata["pg_budget"] = a.pg_budget;
  tree.metadata["pb_budget"] = a.pb_budget;
  write_artifact(a.out, adeval::to_json(tree).dump(2) + "\n");
  return kOk;
}

int cmd_perturb(const Args& a) {
  if (!a.out) throw adeval::ValidationError("perturb needs --out");
  const auto summary = adeval::perturb_corpus(a.corpus, *a.out, adeval::Seed{a.seed});
  std::cout << json{{"images", summary.images}, {"masks", summary.masks},
                    {"plan", (*a.out / "drift_plan.json").string()}}
                   .dump()
            << "\n";
  return kOk;
}

int cmd_validate(const Args& a) {
  const adeval::DatasetManifest manifest = adeval::load_manifest(a.manifest);
  adeval::ValidationOptions vo;
  vo.base_dir = a.data_root.value_or(a.manifest.has_parent_path() ? a.manifest.parent_path() : fs::path("."));
  vo.require_maps = a.require_maps;
  const auto violations = adeval::validate_manifest(manifest, vo);
  json arr = json::array();
  for (const auto& v : violations) arr.push_back({{"sample_id", v.sample_id}, {"rule", v.rule}});
  write_artifact(a.out, arr.dump(2) + "\n");
  return violations.empty() ? kOk : kValidation;
}

int cmd_report(const Args& a) {
  if (a.results.empty()) throw adeval::ValidationError("report needs at least one --results file");
  adeval::ResultsTree tree;
  for (const auto& p : a.results) tree = adeval::merge_trees(tree, adeval::load_results(p));
  if (a.format == "json") {
    write_artifact(a.out, adeval::to_json(tree).dump(2) + "\n");
    return kOk;
  }
  adeval::TableSpec spec;
  spec.methods = split_list(a.methods, ',');
  if (a.methods.empty()) {
    for (const auto& [m, d] : tree.methods) spec.methods.push_back(m);
  }
  for (const auto& c : split_list(a.columns, ',')) spec.columns.push_back(adeval::parse_column(c));
  if (spec.columns.empty()) {
    // One column per dataset of the selected methods.
    std::set<std::string> datasets;
    for (const auto& m : spec.methods) {
      auto it = tree.methods.find(m);
      if (it == tree.methods.end()) continue;
      for (const auto& [d, cats] : it->second) datasets.insert(d);
    }
    for (const auto& d : datasets) spec.columns.push_back(adeval::parse_column(d));
  }
  spec.metrics = split_list(a.metrics, '/');
  spec.bold_max = a.bold;
  const adeval::Table table = adeval::build_table(tree, spec);
  write_artifact(a.out, a.format == "csv" ? adeval::render_csv(table) : adeval::render_markdown(table, spec.bold_max));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anomaly detection evaluation engine"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with default flag values");
  Args a;

  auto* score = app.add_subcommand("score", "Score one category of one method");
  score->add_option("--manifest", a.manifest, "Category manifest JSON")->required();
  score->add_option("--scores", a.scores, "CSV with header sample_id,score")->required();
  score->add_option("--maps-root", a.maps_root, "Root for map paths (default: manifest directory)");
  score->add_option("--data-root", a.data_root, "Root for mask paths (default: manifest directory)");
  score->add_option("--method", a.method, "Method name recorded in the results");
  score->add_option("--dataset", a.dataset, "Dataset name (default: manifest category)");
  score->add_option("--seed", a.seed, "Training seed recorded in the results");
  score->add_option("--fpr-cap", a.fpr_cap, "Upper FPR bound of the PRO integral")->check(CLI::Range(0.0, 1.0));
  score->add_option("--pg-budget", a.pg_budget, "False negative budget for PG")->check(CLI::Range(0.0, 1.0));
  score->add_option("--pb-budget", a.pb_budget, "False positive budget for PB")->check(CLI::Range(0.0, 1.0));
  score->add_option("--bins", a.bins, "Score bins in binned mode")->check(CLI::PositiveNumber);
  score->add_option("--exact-limit", a.exact_limit, "Largest pixel pool scored exactly");
  score->add_flag("--truncate-cap", a.truncate_cap, "Stop the PRO integral at the last point below the cap");
  score->add_option("--curve-out", a.curve_out, "Write the PRO curve as CSV");
  score->add_option("--out", a.out, "Results JSON path (default: stdout)");
  score->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json"}));

  auto* perturb = app.add_subcommand("perturb", "Apply seeded synthetic drift to an image corpus");
  perturb->add_option("--corpus", a.corpus, "Corpus directory (images/ and optional masks/)")->required();
  perturb->add_option("--seed", a.seed, "Drift seed")->required();
  perturb->add_option("--out", a.out, "Output directory")->required();

  auto* contaminate = app.add_subcommand("contaminate", "Replace train normals by test anomalies");
  contaminate->add_option("--manifest", a.manifest)->required();
  contaminate->add_option("--percent", a.percent, "Fraction of train normals replaced, in (0, 1)")->required();
  contaminate->add_option("--seed", a.seed)->required();
  contaminate->add_option("--out", a.out, "Output manifest; the record goes to <out>.record.json");

  auto* split = app.add_subcommand("split", "Move anomalous test samples into train");
  split->add_option("--manifest", a.manifest)->required();
  split->add_option("--n-anomalous", a.n_anomalous, "Number of anomalous samples moved")->required();
  split->add_option("--seed", a.seed)->required();
  split->add_option("--out", a.out, "Output manifest; the record goes to <out>.record.json");

  auto* valsplit = app.add_subcommand("valsplit", "Carve a validation split out of train");
  valsplit->add_option("--manifest", a.manifest)->required();
  valsplit->add_option("--fraction", a.fraction, "Fraction of train moved to val, in (0, 1)");
  valsplit->add_option("--seed", a.seed)->required();
  valsplit->add_option("--out", a.out, "Output manifest; the record goes to <out>.record.json");

  auto* replay = app.add_subcommand("replay", "Re-apply a protocol record to its original manifest");
  replay->add_option("--manifest", a.manifest)->required();
  replay->add_option("--record", a.record)->required();
  replay->add_option("--out", a.out, "Output manifest (default: stdout)");

  auto* report = app.add_subcommand("report", "Merge results files and render tables");
  report->add_option("--results", a.results, "Results JSON files (v1 or legacy layout)")->required();
  report->add_option("--methods", a.methods, "Comma-separated row methods (default: all)");
  report->add_option("--columns", a.columns, "Comma-separated columns: DATASET, LABEL=DS1+DS2, DATASET/CATEGORY");
  report->add_option("--metrics", a.metrics, "Slash-separated metrics per cell");
  report->add_flag("--bold", a.bold, "Bold the column maxima");
  report->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"json", "md", "csv"}));
  report->add_option("--out", a.out, "Output path (default: stdout)");

  auto* validate = app.add_subcommand("validate", "Check a manifest against its invariants");
  validate->add_option("--manifest", a.manifest)->required();
  validate->add_option("--data-root", a.data_root, "Root for mask paths (default: manifest directory)");
  validate->add_flag("--require-maps", a.require_maps, "Every test sample must carry a map_path");
  validate->add_option("--out", a.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("validation", e.what());
  }

  try {
    if (score->parsed()) return cmd_score(a);
    if (perturb->parsed()) return cmd_perturb(a);
    if (validate->parsed()) return cmd_validate(a);
    if (report->parsed()) {
      if (report->count("--format") == 0) a.format = "md";
      return cmd_report(a);
    }
    const adeval::Seed seed{a.seed};
    if (contaminate->parsed()) emit_protocol(adeval::contaminate(read_manifest(a.manifest), a.percent, seed), a.out);
    if (split->parsed()) emit_protocol(adeval::supervised_split(read_manifest(a.manifest), a.n_anomalous, seed), a.out);
    if (valsplit->parsed()) emit_protocol(adeval::validation_split(read_manifest(a.manifest), a.fraction, seed), a.out);
    if (replay->parsed()) {
      const auto m = adeval::replay(read_manifest(a.manifest), adeval::load_record(a.record));
      write_artifact(a.out, adeval::dump_manifest(m));
    }
    return kOk;
  } catch (const adeval::ValidationError& e) {
    return report_error("validation", e.what(), e.sample_id());
  } catch (const adeval::IoError& e) {
    return report_error("io", e.what(), e.sample_id());
  } catch (const fs::filesystem_error& e) {
    return report_error("io", e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
}
