// Copyright 2026 The eigenkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eigenkit/derivation.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

#include "eigenkit/error.h"

namespace eigenkit {

std::string Passage::Text() const {
  std::string text;
  for (const std::string &s : sentences) {
    if (!text.empty()) text += ' ';
    text += s;
  }
  return text;
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::vector<DerivedSample> DeriveSamples(const InfluenceGraph &graph,
                                         const Passage &passage,
                                         const DerivationConfig &config,
                                         Split split) {
  if (graph.passage_id != passage.passage_id) {
    throw Error(ErrorCode::kPassageMismatch,
                "graph '" + graph.passage_id + "' paired with passage '" +
                    passage.passage_id + "'");
  }
  ValidationReport report = Validate(graph);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidGraph,
                "graph '" + graph.passage_id + "': " + report.Summary());
  }

  std::vector<const EventNode *> sources;
  for (const EventNode &n : graph.nodes) sources.push_back(&n);
  std::sort(sources.begin(), sources.end(),
            [](const EventNode *a, const EventNode *b) { return a->id < b->id; });

  using Key = std::tuple<std::string, RelationKind, int, std::string>;
  std::set<Key> emitted;
  std::vector<DerivedSample> samples;
  for (const EventNode *source : sources) {
    for (const Path &path : EnumeratePaths(graph, source->id, config.max_hop)) {
      const std::string &source_text = source->text;
      const std::string &target_text = graph.FindNode(path.nodes.back())->text;
      RelationKind forward{path.sign(), Direction::kForward};
      if (!emitted.emplace(source_text, forward, path.hops(), target_text)
               .second) {
        continue;
      }
      samples.push_back({passage.passage_id, source_text, forward,
                         Hop(path.hops()), target_text, split});
      if (config.include_reverse) {
        samples.push_back({passage.passage_id, target_text, Invert(forward),
                           Hop(path.hops()), source_text, split});
      }
    }
  }
  return samples;
}

std::size_t DatasetBundle::size() const {
  std::size_t n = 0;
  for (const auto &[split, group] : samples) n += group.size();
  return n;
}

std::vector<DerivedSample> DatasetBundle::Flatten() const {
  std::vector<DerivedSample> all;
  all.reserve(size());
  for (const auto &[split, group] : samples) {
    all.insert(all.end(), group.begin(), group.end());
  }
  return all;
}

DatasetBundle DeriveCorpus(const std::vector<CorpusInput> &inputs,
                           const DerivationConfig &config) {
  std::vector<std::vector<DerivedSample>> parts(inputs.size());
  std::vector<std::exception_ptr> failures(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        parts[i] = DeriveSamples(inputs[i].graph, inputs[i].passage, config,
                                 inputs[i].split);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_workers = std::min<std::size_t>(
      inputs.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  DatasetBundle bundle;
  bundle.config = config;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error &e) {
        throw Error(e.code(), "passage '" + inputs[i].passage.passage_id +
                                  "': " + e.what());
      }
    }
    auto &group = bundle.samples[inputs[i].split];
    group.insert(group.end(), std::make_move_iterator(parts[i].begin()),
                 std::make_move_iterator(parts[i].end()));
  }
  return bundle;
}

void StatsTable::Add(const DerivedSample &sample) {
  ++cells_[{sample.split, sample.relation, sample.hop.count()}];
  ++totals_[sample.split];
  max_hop_ = std::max(max_hop_, sample.hop.count());
}

std::size_t StatsTable::count(Split split, RelationKind relation,
                              int hop) const {
  auto it = cells_.find({split, relation, hop});
  return it == cells_.end() ? 0 : it->second;
}

std::size_t StatsTable::total(Split split) const {
  auto it = totals_.find(split);
  return it == totals_.end() ? 0 : it->second;
}

std::size_t StatsTable::total() const {
  std::size_t n = 0;
  for (const auto &[split, t] : totals_) n += t;
  return n;
}

std::string StatsTable::ToText() const {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Split", "Relation Type"};
  for (int h = 1; h <= max_hop_; ++h) header.push_back(std::to_string(h) + "-Hop");
  header.push_back("Total");
  rows.push_back(header);

  for (Split split : {Split::kTrain, Split::kTest, Split::kDev}) {
    if (total(split) == 0) continue;
    bool first = true;
    for (RelationKind r : AllRelations()) {
      std::vector<std::string> row = {std::string(SplitName(split)),
                                      std::string(SurfaceForm(r))};
      for (int h = 1; h <= max_hop_; ++h) {
        row.push_back(std::to_string(count(split, r, h)));
      }
      row.push_back(first ? std::to_string(total(split)) : "");
      first = false;
      rows.push_back(row);
    }
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto &row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream os;
  for (const auto &row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::ostringstream cell;
      // Text columns left-aligned, counts right-aligned.
      if (c < 2) {
        cell << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        cell << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
      if (c > 0) line += "  ";
      line += cell.str();
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
  return os.str();
}

StatsTable Stats(const DatasetBundle &bundle) {
  StatsTable table;
  for (const auto &[split, group] : bundle.samples) {
    for (const DerivedSample &s : group) table.Add(s);
  }
  return table;
}

}  // namespace eigenkit
