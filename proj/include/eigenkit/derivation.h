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

#ifndef EIGENKIT_DERIVATION_H_
#define EIGENKIT_DERIVATION_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "eigenkit/graph.h"

namespace eigenkit {

struct Passage {
  std::string passage_id;
  std::vector<std::string> sentences;

  // Sentences joined by single spaces.
  std::string Text() const;
};

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
std::optional<Split> ParseSplit(std::string_view name);

// One generation sample: (passage, source, relation, hop) -> target.
struct DerivedSample {
  std::string passage_id;
  std::string source_text;
  RelationKind relation;
  Hop hop{1};
  std::string target_text;
  Split split = Split::kTrain;

  bool operator==(const DerivedSample &) const = default;
};

// Ablation switches. include_paragraph and include_hop never change which
// samples are derived; they are recorded with the bundle and applied when
// samples are rendered into queries.
struct DerivationConfig {
  Hop max_hop{3};
  bool include_paragraph = true;
  bool include_reverse = true;
  bool include_hop = true;
};

// Samples of one passage graph. For every simple path of at most max_hop
// edges emits the forward sample with the path's composed sign and, when
// include_reverse is set, the inverse sample right after it. Repeated
// (source, relation, hop, target) tuples are emitted once.
//
// Throws Error(kInvalidGraph) when the graph has validation errors and
// Error(kPassageMismatch) when the passage ids differ.
std::vector<DerivedSample> DeriveSamples(const InfluenceGraph &graph,
                                         const Passage &passage,
                                         const DerivationConfig &config,
                                         Split split);

struct CorpusInput {
  InfluenceGraph graph;
  Passage passage;
  Split split = Split::kTrain;
};

struct DatasetBundle {
  DerivationConfig config;
  // Samples grouped by split; within a split, input order is preserved.
  std::map<Split, std::vector<DerivedSample>> samples;

  std::size_t size() const;
  // Every sample, in split order train, dev, test.
  std::vector<DerivedSample> Flatten() const;
};

// Derives every input (concurrently) and merges the results back in input
// order. Errors carry the offending passage id.
DatasetBundle DeriveCorpus(const std::vector<CorpusInput> &inputs,
                           const DerivationConfig &config);

// Sample counts per (split, relation, hop).
class StatsTable {
 public:
  using Key = std::tuple<Split, RelationKind, int>;

  void Add(const DerivedSample &sample);

  std::size_t count(Split split, RelationKind relation, int hop) const;
  std::size_t total(Split split) const;
  std::size_t total() const;
  int max_hop() const { return max_hop_; }
  const std::map<Key, std::size_t> &cells() const { return cells_; }

  // Aligned plain-text table: one row per (split, relation), one column per
  // hop plus the split total on the first row of each split.
  std::string ToText() const;

 private:
  std::map<Key, std::size_t> cells_;
  std::map<Split, std::size_t> totals_;
  int max_hop_ = 0;
};

StatsTable Stats(const DatasetBundle &bundle);

}  // namespace eigenkit

#endif  // EIGENKIT_DERIVATION_H_
