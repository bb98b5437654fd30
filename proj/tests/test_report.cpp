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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "adeval/error.hpp"
#include "adeval/report.hpp"
#include "support.hpp"

namespace adeval {
namespace {

const std::filesystem::path kData = ADEVAL_TEST_DATA;

ResultsTree three_seed_tree() {
  ResultsTree t;
  const char* seeds[] = {"0", "1", "2"};
  const double auroc[] = {0.80, 0.82, 0.84};
  for (int i = 0; i < 3; ++i) {
    t.set("M", "D", "cat", seeds[i], MetricValue::ok("im.AUROC", auroc[i]));
    t.set("M", "D", "cat", seeds[i], MetricValue::unavailable("pix.AUPRO"));
  }
  return t;
}

TEST(MergeSeeds, MeanAndStd) {
  const auto stats = merge_seeds(three_seed_tree(), "M", "D");
  const auto& s = stats.at("cat").at("im.AUROC");
  EXPECT_NEAR(*s.mean, 0.82, 1e-12);
  EXPECT_NEAR(*s.stddev, 0.02, 1e-12);
  EXPECT_EQ(s.seeds, 3u);
  EXPECT_FALSE(stats.at("cat").at("pix.AUPRO").mean);
}

TEST(MergeSeeds, SingleSeedHasNoStd) {
  ResultsTree t;
  t.set("M", "D", "cat", "0", MetricValue::ok("im.AUROC", 0.9));
  const auto s = merge_seeds(t, "M", "D").at("cat").at("im.AUROC");
  EXPECT_EQ(*s.mean, 0.9);
  EXPECT_FALSE(s.stddev);
}

TEST(MergeSeeds, MixedAvailabilityIsAnError) {
  auto t = three_seed_tree();
  t.set("M", "D", "cat", "1", MetricValue::ok("pix.AUPRO", 0.5));
  EXPECT_THROW(merge_seeds(t, "M", "D"), ValidationError);
}

TEST(Aggregate, UnweightedCategoryMean) {
  ResultsTree t;
  t.set("M", "D", "a", "0", MetricValue::ok("im.AUROC", 0.90));
  t.set("M", "D", "b", "0", MetricValue::ok("im.AUROC", 0.92));
  t.set("M", "D", "c", "0", MetricValue::ok("im.AUROC", 0.94));
  EXPECT_NEAR(*aggregate_dataset(t, "M", "D").at("im.AUROC").value, 0.92, 1e-12);
  try {
    aggregate_dataset(t, "M", "D", {"a", "b", "c", "d"});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("d"), std::string::npos);
  }
}

TEST(Aggregate, PermutationInvariant) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<std::string, double>> entries;
  for (int c = 0; c < 12; ++c) entries.emplace_back("cat" + std::to_string(c), u(gen));
  ResultsTree a, b;
  for (const auto& [c, v] : entries) a.set("M", "D", c, "0", MetricValue::ok("im.AUROC", v));
  std::shuffle(entries.begin(), entries.end(), gen);
  for (const auto& [c, v] : entries) b.set("M", "D", c, "0", MetricValue::ok("im.AUROC", v));
  EXPECT_EQ(aggregate_dataset(a, "M", "D"), aggregate_dataset(b, "M", "D"));
}

TEST(Aggregate, MultiDatasetSkipsUnavailable) {
  ResultsTree t;
  t.set("M", "A", "x", "0", MetricValue::ok("pix.F1Max", 0.3));
  t.set("M", "B", "x", "0", MetricValue::ok("pix.F1Max", 0.5));
  t.set("M", "C", "x", "0", MetricValue::unavailable("pix.F1Max"));
  EXPECT_NEAR(*aggregate_datasets(t, "M", {"A", "B", "C"}).at("pix.F1Max").value, 0.4, 1e-12);
}

TEST(Tree, RejectsUnknownMetric) {
  ResultsTree t;
  EXPECT_THROW(t.set("M", "D", "c", "0", MetricValue::ok("im.Accuracy", 0.5)), ValidationError);
}

TEST(Tree, JsonRoundTripIsSemanticallyIdentical) {
  auto t = three_seed_tree();
  t.metadata = {{"resolution", 256}, {"drift", false}};
  const auto j = to_json(t);
  EXPECT_EQ(results_from_json(j), t);
  EXPECT_EQ(to_json(results_from_json(j)), j);
  testing_support::TempDir dir;
  save_results(t, dir / "r.json");
  EXPECT_EQ(load_results(dir / "r.json"), t);
}

TEST(Tree, LegacyLayoutReadAsPercent) {
  const auto t = load_results(kData / "general_results.json");
  const auto& m = t.methods.at("PatchCore").at("BTAD").at("all").at(std::string(kDefaultSeed));
  EXPECT_NEAR(*m.at("im.AUROC").value, 0.955, 1e-12);
  EXPECT_FALSE(t.methods.at("RD").at("VAD").at("all").at("0").at("pix.AUPRO").available());
  // Written back as v1, then read again.
  EXPECT_EQ(results_from_json(to_json(t)), t);
}

TEST(Tree, LegacyLayoutWithSeedsAndAliases) {
  const auto doc = nlohmann::json::parse(R"({"M": {"D": {"c": {"1": {"image_AUROC": 0.5}, "2": {"image_AUROC": 0.7}}}}})");
  const auto t = results_from_json(doc);
  EXPECT_NEAR(*aggregate_dataset(t, "M", "D").at("im.AUROC").value, 0.6, 1e-12);
}

TEST(Tree, MergeDetectsConflicts) {
  ResultsTree a, b;
  a.set("M", "D", "c", "0", MetricValue::ok("im.AUROC", 0.5));
  b.set("M", "D", "c", "1", MetricValue::ok("im.AUROC", 0.7));
  const auto merged = merge_trees(a, b);
  EXPECT_EQ(merged.methods.at("M").at("D").at("c").size(), 2u);
  b.set("M", "D", "c", "0", MetricValue::ok("im.AUROC", 0.6));
  EXPECT_THROW(merge_trees(a, b), ValidationError);
}

TEST(Render, PaperCells) {
  const auto t = load_results(kData / "general_results.json");
  TableSpec spec;
  spec.methods = {"PatchCore"};
  spec.columns = {parse_column("BTAD")};
  spec.metrics = {"im.AUROC", "im.PG2"};
  const auto table = build_table(t, spec);
  EXPECT_EQ(format_cell(table.cells[0][0]), "95.5/67.3");
  spec.methods = {"RD"};
  spec.metrics = {"pix.AUPRO", "pix.F1Max"};
  EXPECT_EQ(format_cell(build_table(t, spec).cells[0][0]), "79.5/58.5");
  spec.columns = {parse_column("VAD")};
  EXPECT_EQ(format_cell(build_table(t, spec).cells[0][0]), "—/—");
}

TEST(Render, MarkdownShape) {
  const auto t = load_results(kData / "general_results.json");
  TableSpec spec;
  spec.methods = {"PatchCore", "RD"};
  spec.columns = {parse_column("BTAD"), parse_column("VAD")};
  spec.metrics = {"im.AUROC", "im.PG2"};
  spec.bold_max = true;
  EXPECT_EQ(render_table(t, spec),
            "| Method | BTAD | VAD |\n"
            "|---|---|---|\n"
            "| PatchCore | **95.5**/67.3 | **88.0**/16.5 |\n"
            "| RD | 94.3/**67.7** | 84.7/**20.1** |\n");
  EXPECT_EQ(render_csv(build_table(t, spec)),
            "Method,BTAD im.AUROC,BTAD im.PG2,VAD im.AUROC,VAD im.PG2\n"
            "PatchCore,95.5,67.3,88.0,16.5\n"
            "RD,94.3,67.7,84.7,20.1\n");
}

TEST(Render, EmptySpecIsHeaderOnly) {
  EXPECT_EQ(render_table(ResultsTree{}, TableSpec{}), "| Method |\n|---|\n");
}

TEST(Render, Errors) {
  const auto t = load_results(kData / "general_results.json");
  TableSpec spec;
  spec.metrics = {"im.Accuracy"};
  EXPECT_THROW(build_table(t, spec), ValidationError);
  spec.metrics = {"im.AUROC"};
  spec.methods = {"Nobody"};
  EXPECT_THROW(build_table(t, spec), ValidationError);
  spec.methods = {"PatchCore"};
  spec.columns = {parse_column("Nowhere")};
  EXPECT_THROW(build_table(t, spec), ValidationError);
  spec.columns = {parse_column("BTAD")};
  spec.metrics = {"im.PB2"};
  EXPECT_THROW(build_table(t, spec), ValidationError);
  EXPECT_THROW(parse_column("D="), ValidationError);
}

TEST(Render, ColumnSpecs) {
  const auto c = parse_column("D=RIADs+BTech+VAD");
  EXPECT_EQ(c.label, "D");
  EXPECT_EQ(c.datasets, (std::vector<std::string>{"RIADs", "BTech", "VAD"}));
  const auto d = parse_column("MVTec/bottle");
  EXPECT_EQ(d.datasets, std::vector<std::string>{"MVTec"});
  EXPECT_EQ(*d.category, "bottle");
}

TEST(Render, RoundsHalfUp) {
  ResultsTree t;
  t.set("M", "D", "c", "0", MetricValue::ok("im.AUROC", 0.9125));
  t.set("M", "D", "c", "0", MetricValue::ok("im.PG2", 0.91249));
  TableSpec spec{{"M"}, {parse_column("D")}, {"im.AUROC", "im.PG2"}, false};
  EXPECT_EQ(format_cell(build_table(t, spec).cells[0][0]), "91.3/91.2");
}

}  // namespace
}  // namespace adeval
