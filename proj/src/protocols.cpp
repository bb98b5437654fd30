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

#include "adeval/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "adeval/error.hpp"
#include "adeval/numeric.hpp"

namespace adeval {

using nlohmann::json;

std::string_view to_string(Protocol protocol) noexcept {
  switch (protocol) {
    case Protocol::contaminate: return "contaminate";
    case Protocol::supervised_split: return "supervised_split";
    case Protocol::validation_split: return "validation_split";
  }
  return "contaminate";
}

Protocol parse_protocol(std::string_view text) {
  if (text == "contaminate") return Protocol::contaminate;
  if (text == "supervised_split") return Protocol::supervised_split;
  if (text == "validation_split") return Protocol::validation_split;
  throw ValidationError("unknown protocol '" + std::string(text) + "'");
}

json to_json(const ProtocolRecord& record) {
  return {{"protocol", to_string(record.protocol)},
          {"seed", record.seed.value},
          {"moved_ids", record.moved_ids},
          {"parameters", record.parameters}};
}

ProtocolRecord record_from_json(const json& doc) {
  try {
    ProtocolRecord r;
    r.protocol = parse_protocol(doc.at("protocol").get<std::string>());
    r.seed.value = doc.at("seed").get<std::uint64_t>();
    r.moved_ids = doc.at("moved_ids").get<std::vector<std::string>>();
    r.parameters = doc.value("parameters", json::object());
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed protocol record: ") + e.what());
  }
}

void save_record(const ProtocolRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_json(record).dump(2) << "\n";
}

ProtocolRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return record_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + " is not valid JSON: " + e.what());
  }
}

namespace {

// Uniform selection without replacement: every candidate draws an
// independent key from its own substream and the k smallest keys win.
// A sample's fate depends only on (seed, sample_id, purpose).
std::vector<std::string> select(std::vector<const SampleRecord*> candidates, std::size_t k, Seed seed,
                                std::string_view purpose) {
  std::vector<std::pair<std::uint64_t, std::string>> keyed;
  keyed.reserve(candidates.size());
  for (const auto* s : candidates) keyed.emplace_back(substream_key(seed, s->sample_id, purpose), s->sample_id);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k && i < keyed.size(); ++i) out.push_back(keyed[i].second);
  return out;
}

std::vector<const SampleRecord*> matching(const DatasetManifest& m, Split split, std::optional<Label> label) {
  std::vector<const SampleRecord*> out;
  for (const auto& s : m.samples) {
    if (s.split == split && (!label || s.label == *label)) out.push_back(&s);
  }
  return out;
}

void check_fraction(double value, const char* what) {
  if (!(value > 0.0 && value < 1.0)) throw ValidationError(std::string(what) + " must lie in (0, 1)");
}

std::vector<std::string> string_list(const json& params, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) return {};
  return it->get<std::vector<std::string>>();
}

}  // namespace

ProtocolResult contaminate(const DatasetManifest& manifest, double percent, Seed seed) {
  check_fraction(percent, "contamination percent");
  const auto normals = matching(manifest, Split::train, Label::good);
  const auto test_bad = matching(manifest, Split::test, Label::bad);
  const auto k = static_cast<std::size_t>(round_half_even(percent * static_cast<double>(normals.size())));
  if (test_bad.size() < k) {
    throw ValidationError("contamination needs " + std::to_string(k) + " bad test samples, manifest has " +
                          std::to_string(test_bad.size()));
  }

  ProtocolRecord record;
  record.protocol = Protocol::contaminate;
  record.seed = seed;
  record.moved_ids = select(test_bad, k, seed, "contaminate/inject");
  const auto removed = select(normals, k, seed, "contaminate/remove");
  record.parameters = {{"percent", percent},
                       {"train_normals", normals.size()},
                       {"replaced", k},
                       {"removed_ids", removed}};
  return {replay(manifest, record), record};
}

ProtocolResult supervised_split(const DatasetManifest& manifest, std::size_t n_anomalous, Seed seed) {
  ProtocolRecord record;
  record.protocol = Protocol::supervised_split;
  record.seed = seed;
  const auto train_bad = matching(manifest, Split::train, Label::bad);
  if (!train_bad.empty()) {
    if (train_bad.size() < n_anomalous) {
      throw ValidationError("train split holds " + std::to_string(train_bad.size()) + " bad samples, " +
                            std::to_string(n_anomalous) + " requested");
    }
    record.parameters = {{"n_anomalous", n_anomalous}, {"pass_through", true}, {"train_bad", train_bad.size()}};
    return {manifest, record};
  }
  const auto test_bad = matching(manifest, Split::test, Label::bad);
  if (test_bad.size() < n_anomalous) {
    throw ValidationError("supervised split needs " + std::to_string(n_anomalous) + " bad test samples, manifest has " +
                          std::to_string(test_bad.size()));
  }
  record.moved_ids = select(test_bad, n_anomalous, seed, "supervised_split");
  record.parameters = {{"n_anomalous", n_anomalous}, {"pass_through", false}};
  return {replay(manifest, record), record};
}

ProtocolResult validation_split(const DatasetManifest& manifest, double fraction, Seed seed) {
  check_fraction(fraction, "validation fraction");
  const auto train = matching(manifest, Split::train, std::nullopt);
  if (train.empty()) throw ValidationError("validation split needs a non-empty train split");

  const auto good = matching(manifest, Split::train, Label::good);
  const auto bad = matching(manifest, Split::train, Label::bad);
  const auto total = static_cast<std::size_t>(round_half_even(fraction * static_cast<double>(train.size())));

  ProtocolRecord record;
  record.protocol = Protocol::validation_split;
  record.seed = seed;
  const bool stratified = !bad.empty() && !good.empty();
  std::size_t take_good = total;
  std::size_t take_bad = 0;
  if (stratified) {
    // Largest-remainder apportionment keeps the total at round(fraction * n).
    const double q_good = fraction * static_cast<double>(good.size());
    const double q_bad = fraction * static_cast<double>(bad.size());
    take_good = static_cast<std::size_t>(snapped_floor(q_good));
    take_bad = static_cast<std::size_t>(snapped_floor(q_bad));
    std::size_t remaining = total - std::min(total, take_good + take_bad);
    const double r_good = q_good - static_cast<double>(take_good);
    const double r_bad = q_bad - static_cast<double>(take_bad);
    if (remaining > 0 && r_good >= r_bad && take_good < good.size()) {
      ++take_good;
      --remaining;
    }
    if (remaining > 0 && take_bad < bad.size()) {
      ++take_bad;
      --remaining;
    }
    if (remaining > 0 && take_good < good.size()) ++take_good;
    record.moved_ids = select(good, take_good, seed, "validation_split/good");
    const auto picked_bad = select(bad, take_bad, seed, "validation_split/bad");
    record.moved_ids.insert(record.moved_ids.end(), picked_bad.begin(), picked_bad.end());
  } else {
    record.moved_ids = select(train, total, seed, "validation_split");
  }
  record.parameters = {{"fraction", fraction},
                       {"stratified", stratified},
                       {"train_size", train.size()},
                       {"val_good", stratified ? take_good : (bad.empty() ? total : 0)},
                       {"val_bad", stratified ? take_bad : (bad.empty() ? 0 : total)}};
  return {replay(manifest, record), record};
}

DatasetManifest replay(const DatasetManifest& original, const ProtocolRecord& record) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < original.samples.size(); ++i) index.emplace(original.samples[i].sample_id, i);

  auto require = [&](const std::string& id, Split split, std::optional<Label> label) -> std::size_t {
    auto it = index.find(id);
    if (it == index.end()) throw ValidationError("record references unknown sample", id);
    const auto& s = original.samples[it->second];
    if (s.split != split || (label && s.label != *label)) {
      throw ValidationError("record references a sample in the wrong split or class", id);
    }
    return it->second;
  };

  DatasetManifest out = original;
  std::unordered_set<std::size_t> drop;
  switch (record.protocol) {
    case Protocol::contaminate:
      for (const auto& id : string_list(record.parameters, "removed_ids")) drop.insert(require(id, Split::train, Label::good));
      for (const auto& id : record.moved_ids) out.samples[require(id, Split::test, Label::bad)].split = Split::train;
      break;
    case Protocol::supervised_split:
      for (const auto& id : record.moved_ids) out.samples[require(id, Split::test, Label::bad)].split = Split::train;
      break;
    case Protocol::validation_split:
      for (const auto& id : record.moved_ids) out.samples[require(id, Split::train, std::nullopt)].split = Split::val;
      break;
  }
  if (!drop.empty()) {
    std::vector<SampleRecord> kept;
    kept.reserve(out.samples.size() - drop.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      if (!drop.contains(i)) kept.push_back(std::move(out.samples[i]));
    }
    out.samples = std::move(kept);
  }
  // Moving bad samples out of test can remove the last pixel labels.
  out.has_pixel_labels = std::any_of(out.samples.begin(), out.samples.end(), [](const SampleRecord& s) {
    return s.split == Split::test && s.label == Label::bad && s.mask_path.has_value();
  });
  return out;
}

std::size_t select_epoch(const EpochTrace& trace, std::optional<std::size_t> patience) {
  if (trace.epochs.empty()) throw ValidationError("epoch trace is empty");
  for (std::size_t i = 1; i < trace.epochs.size(); ++i) {
    if (trace.epochs[i].first <= trace.epochs[i - 1].first) {
      throw ValidationError("epoch indices must be strictly increasing");
    }
  }
  if (!patience) return trace.epochs.back().first;

  std::size_t best = 0;
  std::size_t stale = 0;
  for (std::size_t i = 1; i < trace.epochs.size(); ++i) {
    if (trace.epochs[i].second > trace.epochs[best].second) {
      best = i;
      stale = 0;
    } else if (++stale >= *patience) {
      break;
    }
  }
  return trace.epochs[best].first;
}

}  // namespace adeval
