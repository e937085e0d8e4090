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

#ifndef EIGENKIT_IO_H_
#define EIGENKIT_IO_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenkit/derivation.h"
#include "eigenkit/graph.h"
#include "eigenkit/metrics.h"
#include "eigenkit/qa_augment.h"

// Line-delimited JSON codecs for every file the toolkit reads or writes.
// Readers skip blank lines and report problems as Error(kParseError) with
// "<file>:<line>:" context; unreadable files raise Error(kIoFailure).
namespace eigenkit::io {

// {"passage_id", "nodes": [{"id", "text"}], "edges": [{"source", "target",
//  "sign": "helps"|"hurts"}]}
std::string GraphToLine(const InfluenceGraph &graph);
InfluenceGraph GraphFromLine(const std::string &line);
std::vector<InfluenceGraph> ReadGraphs(const std::filesystem::path &path);
void WriteGraphs(const std::filesystem::path &path,
                 const std::vector<InfluenceGraph> &graphs);

// {"passage_id", "sentences": [...], "split": "train"|"dev"|"test"}
// The split is optional for passages that are not part of a corpus.
struct PassageRecord {
  Passage passage;
  std::optional<Split> split;
};
std::vector<PassageRecord> ReadPassages(const std::filesystem::path &path);

// {"passage_id", "source", "relation", "hop", "target", "split"}
std::string SampleToLine(const DerivedSample &sample);
DerivedSample SampleFromLine(const std::string &line);

// Writes <dir>/dataset.jsonl and the <dir>/bundle_config.json sidecar.
struct BundlePaths {
  std::filesystem::path dataset;
  std::filesystem::path config;
};
BundlePaths WriteBundle(const std::filesystem::path &dir,
                        const DatasetBundle &bundle);
// Reads a dataset file; the config is taken from a bundle_config.json next
// to it when present, defaults otherwise.
DatasetBundle ReadBundle(const std::filesystem::path &dataset);

std::string ConfigToJson(const DerivationConfig &config);

// {"prompt", "response"} per line.
std::vector<std::pair<std::string, std::string>> ReadMockScript(
    const std::filesystem::path &path);

// Evaluation records: the text is read from "target" (dataset files) or
// "text"; relation and hop are required on references.
struct EvalRecord {
  std::string text;
  std::optional<RelationKind> relation;
  std::optional<int> hop;
};
std::vector<EvalRecord> ReadEvalRecords(const std::filesystem::path &path);

// {"question_id", "passage": [sentences] | "text", "cause_event",
//  "effect_event", "label", "hop_count"?, "question_type"?}
std::vector<QASample> ReadQASamples(const std::filesystem::path &path);

// {"question_id", "label"} per line.
std::map<std::string, QALabel> ReadPredictions(const std::filesystem::path &path);

// Writes text to a file, raising Error(kIoFailure) on failure.
void WriteText(const std::filesystem::path &path, const std::string &text);

}  // namespace eigenkit::io

#endif  // EIGENKIT_IO_H_
