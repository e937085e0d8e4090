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

#ifndef EIGENKIT_TESTS_FIXTURES_H_
#define EIGENKIT_TESTS_FIXTURES_H_

#include <string>
#include <utility>
#include <vector>

#include "eigenkit/derivation.h"
#include "eigenkit/graph.h"
#include "eigenkit/graph_builder.h"
#include "eigenkit/templating.h"

namespace eigenkit::fixtures {

inline Passage Photosynthesis() {
  return {"photosynthesis",
          {"Sunlight reaches the leaves of the plant.",
           "The leaves trap the energy of the sunlight.",
           "The plant turns water and carbon dioxide into sugar.",
           "The plant uses the sugar to grow."}};
}

// The photosynthesis influence graph around "more sunlight".
inline InfluenceGraph SunlightGraph() {
  InfluenceGraph g;
  g.passage_id = "photosynthesis";
  for (const char *text : {"bright skies", "cloudy skies", "more sunlight",
                           "plants trap sunlight", "plants grow taller"}) {
    g.nodes.push_back({text, text});
  }
  g.edges = {{"bright skies", "more sunlight", Sign::kPositive},
             {"cloudy skies", "more sunlight", Sign::kNegative},
             {"more sunlight", "plants trap sunlight", Sign::kPositive},
             {"plants trap sunlight", "plants grow taller", Sign::kPositive}};
  return g;
}

// Build request for "more sunlight" with relations {helps, is helped by,
// is hurt by} and hops {1, 2}.
inline BuildSpec SunlightSpec() {
  BuildSpec spec;
  spec.passage = Photosynthesis();
  spec.seed = "more sunlight";
  spec.relations = {RelationKind::Helps(), RelationKind::HelpedBy(),
                    RelationKind::HurtBy()};
  spec.hops = {Hop(1), Hop(2)};
  return spec;
}

// Mock responses for the six SunlightSpec requests. The two 2-hop inverse
// queries answer with empty text.
inline std::vector<std::pair<std::string, std::string>> SunlightScript() {
  const std::string p = Photosynthesis().Text();
  auto q = [&](RelationKind r, int h) {
    return RenderQuery(p, "more sunlight", r, Hop(h)).text;
  };
  return {{q(RelationKind::Helps(), 1), "plants trap sunlight"},
          {q(RelationKind::Helps(), 2), "plants grow taller"},
          {q(RelationKind::HelpedBy(), 1), "bright skies"},
          {q(RelationKind::HelpedBy(), 2), ""},
          {q(RelationKind::HurtBy(), 1), "cloudy skies"},
          {q(RelationKind::HurtBy(), 2), ""}};
}

}  // namespace eigenkit::fixtures

#endif  // EIGENKIT_TESTS_FIXTURES_H_
