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

#include "eigenkit/io.h"

#include <fstream>
#include <functional>
#include <sstream>

#include "eigenkit/error.h"
#include "json.hpp"

namespace eigenkit::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Field access that reports the missing key by name.
template <typename T>
T Field(const json &j, const char *key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &) {
    throw Error(ErrorCode::kParseError, std::string("bad type for field '") + key + "'");
  }
}

std::vector<std::string> Sentences(const json &value) {
  if (value.is_string()) return {value.get<std::string>()};
  if (!value.is_array()) {
    throw Error(ErrorCode::kParseError, "passage must be a string or an array");
  }
  std::vector<std::string> out;
  for (const json &s : value) out.push_back(s.get<std::string>());
  return out;
}

// Calls fn(line_json) for each non-blank line, wrapping errors with the
// file position.
void ForEachRecord(const std::filesystem::path &path,
                   const std::function<void(const json &)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(number) + ": " +
                                              e.what());
    } catch (const Error &e) {
      throw Error(e.code(), path.string() + ":" + std::to_string(number) +
                                ": " + e.what());
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParseError, path.string() + ":" +
                                              std::to_string(number) + ": " +
                                              e.what());
    }
  }
}

RelationKind RelationField(const json &j, const char *key) {
  auto rel = ParseRelation(Field<std::string>(j, key));
  if (!rel) throw Error(ErrorCode::kParseError, "unknown relation '" + j[key].get<std::string>() + "'");
  return *rel;
}

Split SplitField(const json &j) {
  auto split = ParseSplit(Field<std::string>(j, "split"));
  if (!split) throw Error(ErrorCode::kParseError, "unknown split '" + j["split"].get<std::string>() + "'");
  return *split;
}

DerivationConfig ConfigFromJson(const json &j) {
  DerivationConfig cfg;
  cfg.max_hop = Hop(j.value("max_hop", 3));
  cfg.include_paragraph = j.value("include_paragraph", true);
  cfg.include_reverse = j.value("include_reverse", true);
  cfg.include_hop = j.value("include_hop", true);
  return cfg;
}

}  // namespace

std::string GraphToLine(const InfluenceGraph &graph) {
  ordered_json nodes = ordered_json::array();
  for (const EventNode &n : graph.nodes) {
    nodes.push_back({{"id", n.id}, {"text", n.text}});
  }
  ordered_json edges = ordered_json::array();
  for (const InfluenceEdge &e : graph.edges) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"sign", SignName(e.sign)}});
  }
  ordered_json j = {{"passage_id", graph.passage_id},
                    {"nodes", std::move(nodes)},
                    {"edges", std::move(edges)}};
  return j.dump();
}

namespace {

InfluenceGraph GraphFromJson(const json &j) {
  InfluenceGraph g;
  g.passage_id = Field<std::string>(j, "passage_id");
  for (const json &n : Field<json>(j, "nodes")) {
    g.nodes.push_back({Field<std::string>(n, "id"), Field<std::string>(n, "text")});
  }
  for (const json &e : Field<json>(j, "edges")) {
    auto sign = ParseSign(Field<std::string>(e, "sign"));
    if (!sign) {
      throw Error(ErrorCode::kParseError, "edge sign must be 'helps' or 'hurts'");
    }
    g.edges.push_back({Field<std::string>(e, "source"), Field<std::string>(e, "target"), *sign});
  }
  return g;
}

DerivedSample SampleFromJson(const json &j) {
  DerivedSample s;
  s.passage_id = Field<std::string>(j, "passage_id");
  s.source_text = Field<std::string>(j, "source");
  s.relation = RelationField(j, "relation");
  s.hop = Hop(Field<int>(j, "hop"));
  s.target_text = Field<std::string>(j, "target");
  s.split = SplitField(j);
  return s;
}

}  // namespace

InfluenceGraph GraphFromLine(const std::string &line) {
  try {
    return GraphFromJson(json::parse(line));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::vector<InfluenceGraph> ReadGraphs(const std::filesystem::path &path) {
  std::vector<InfluenceGraph> graphs;
  ForEachRecord(path, [&](const json &j) { graphs.push_back(GraphFromJson(j)); });
  return graphs;
}

void WriteGraphs(const std::filesystem::path &path,
                 const std::vector<InfluenceGraph> &graphs) {
  std::string text;
  for (const InfluenceGraph &g : graphs) text += GraphToLine(g) + "\n";
  WriteText(path, text);
}

std::vector<PassageRecord> ReadPassages(const std::filesystem::path &path) {
  std::vector<PassageRecord> out;
  ForEachRecord(path, [&](const json &j) {
    PassageRecord rec;
    rec.passage.passage_id = Field<std::string>(j, "passage_id");
    rec.passage.sentences = Sentences(Field<json>(j, "sentences"));
    if (rec.passage.sentences.empty()) {
      throw Error(ErrorCode::kParseError, "passage '" + rec.passage.passage_id +
                                              "' has no sentences");
    }
    if (j.contains("split") && !j["split"].is_null()) rec.split = SplitField(j);
    out.push_back(std::move(rec));
  });
  return out;
}

std::string SampleToLine(const DerivedSample &sample) {
  ordered_json j = {{"passage_id", sample.passage_id},
                    {"source", sample.source_text},
                    {"relation", SurfaceForm(sample.relation)},
                    {"hop", sample.hop.count()},
                    {"target", sample.target_text},
                    {"split", SplitName(sample.split)}};
  return j.dump();
}

DerivedSample SampleFromLine(const std::string &line) {
  try {
    return SampleFromJson(json::parse(line));
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

std::string ConfigToJson(const DerivationConfig &config) {
  ordered_json j = {{"max_hop", config.max_hop.count()},
                    {"include_paragraph", config.include_paragraph},
                    {"include_reverse", config.include_reverse},
                    {"include_hop", config.include_hop}};
  return j.dump(2) + "\n";
}

BundlePaths WriteBundle(const std::filesystem::path &dir,
                        const DatasetBundle &bundle) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string());
  BundlePaths paths{dir / "dataset.jsonl", dir / "bundle_config.json"};
  std::string text;
  for (const DerivedSample &s : bundle.Flatten()) text += SampleToLine(s) + "\n";
  WriteText(paths.dataset, text);
  WriteText(paths.config, ConfigToJson(bundle.config));
  return paths;
}

DatasetBundle ReadBundle(const std::filesystem::path &dataset) {
  DatasetBundle bundle;
  const std::filesystem::path config = dataset.parent_path() / "bundle_config.json";
  if (std::filesystem::exists(config)) {
    std::ifstream in(config, std::ios::binary);
    try {
      bundle.config = ConfigFromJson(json::parse(in));
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kParseError, config.string() + ": " + e.what());
    }
  }
  ForEachRecord(dataset, [&](const json &j) {
    DerivedSample s = SampleFromJson(j);
    bundle.samples[s.split].push_back(std::move(s));
  });
  return bundle;
}

std::vector<std::pair<std::string, std::string>> ReadMockScript(
    const std::filesystem::path &path) {
  std::vector<std::pair<std::string, std::string>> entries;
  ForEachRecord(path, [&](const json &j) {
    entries.emplace_back(Field<std::string>(j, "prompt"),
                         Field<std::string>(j, "response"));
  });
  return entries;
}

std::vector<EvalRecord> ReadEvalRecords(const std::filesystem::path &path) {
  std::vector<EvalRecord> out;
  ForEachRecord(path, [&](const json &j) {
    EvalRecord rec;
    rec.text = j.contains("target") ? Field<std::string>(j, "target")
                                    : Field<std::string>(j, "text");
    if (j.contains("relation")) rec.relation = RelationField(j, "relation");
    if (j.contains("hop") && !j["hop"].is_null()) rec.hop = Field<int>(j, "hop");
    out.push_back(std::move(rec));
  });
  return out;
}

std::vector<QASample> ReadQASamples(const std::filesystem::path &path) {
  std::vector<QASample> out;
  ForEachRecord(path, [&](const json &j) {
    QASample q;
    q.question_id = Field<std::string>(j, "question_id");
    q.passage.passage_id = j.value("passage_id", q.question_id);
    q.passage.sentences = Sentences(Field<json>(j, "passage"));
    q.cause_event = Field<std::string>(j, "cause_event");
    q.effect_event = Field<std::string>(j, "effect_event");
    auto label = ParseQALabel(Field<std::string>(j, "label"));
    if (!label) throw Error(ErrorCode::kParseError, "unknown label");
    q.label = *label;
    if (j.contains("hop_count") && !j["hop_count"].is_null()) {
      int hop = Field<int>(j, "hop_count");
      if (hop < 1 || hop > 3) {
        throw Error(ErrorCode::kParseError, "hop_count must be in 1..3");
      }
      q.hop_count = hop;
    }
    if (j.contains("question_type") && !j["question_type"].is_null()) {
      auto type = ParseQuestionType(Field<std::string>(j, "question_type"));
      if (!type) throw Error(ErrorCode::kParseError, "unknown question_type");
      q.question_type = *type;
    }
    out.push_back(std::move(q));
  });
  return out;
}

std::map<std::string, QALabel> ReadPredictions(const std::filesystem::path &path) {
  std::map<std::string, QALabel> out;
  ForEachRecord(path, [&](const json &j) {
    auto label = ParseQALabel(Field<std::string>(j, "label"));
    if (!label) throw Error(ErrorCode::kParseError, "unknown label");
    out[Field<std::string>(j, "question_id")] = *label;
  });
  return out;
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  if (!os) throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
}

}  // namespace eigenkit::io
