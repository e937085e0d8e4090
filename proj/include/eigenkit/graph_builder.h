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

#ifndef EIGENKIT_GRAPH_BUILDER_H_
#define EIGENKIT_GRAPH_BUILDER_H_

#include <string>
#include <vector>

#include "eigenkit/backend.h"
#include "eigenkit/derivation.h"
#include "eigenkit/graph.h"

namespace eigenkit {

struct BuildSpec {
  Passage passage;
  std::string seed;
  std::vector<RelationKind> relations;
  std::vector<Hop> hops;
  bool dedup = true;

  // Sampling parameters applied to every request; the prompt is filled in
  // per (relation, hop).
  GenerationRequest request_template;

  // Throws Error(kInvalidArgument) on a blank seed or empty relation/hop
  // sets.
  void Validate() const;
};

// Records which (relation, hop) request produced a node.
struct Attachment {
  std::string node_id;
  RelationKind relation;
  Hop hop;
};

struct BuildResult {
  InfluenceGraph graph;
  std::vector<Attachment> attachments;
  std::vector<std::string> warnings;
};

// Lowercases, collapses whitespace and strips trailing punctuation.
std::string NormalizeEventText(std::string_view text);

// One generation request per (relation, hop) pair, issued concurrently up to
// the generator's in-flight limit and assembled in spec order. Forward
// relations add seed -> generated edges, inverse relations add
// generated -> seed edges, both carrying the relation's sign. With dedup on,
// texts equal under NormalizeEventText share one node. Empty generations and
// generations equal to the seed are dropped with a warning. Backend errors
// propagate annotated with the failing (relation, hop).
BuildResult BuildGraph(const BuildSpec &spec, Generator &generator);

// Human-readable listing, one line per edge:
//   <source text> --helps--> <target text>
std::string AdjacencyListing(const InfluenceGraph &graph);

}  // namespace eigenkit

#endif  // EIGENKIT_GRAPH_BUILDER_H_
