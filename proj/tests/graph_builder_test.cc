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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "eigenkit/error.h"
#include "eigenkit/graph_builder.h"
#include "fixtures.h"

using namespace eigenkit;

namespace {

bool HasEdge(const InfluenceGraph &g, const std::string &from, const std::string &to,
             Sign sign) {
  return std::find(g.edges.begin(), g.edges.end(), InfluenceEdge{from, to, sign}) !=
         g.edges.end();
}

// Fails every prompt mentioning `needle`, answers "ok" otherwise.
class FailingGenerator : public Generator {
 public:
  explicit FailingGenerator(std::string needle) : needle_(std::move(needle)) {}
  GenerationResult Generate(const GenerationRequest &request) override {
    if (request.prompt.find(needle_) != std::string::npos) {
      throw Error(ErrorCode::kBackendUnavailable, "connection refused");
    }
    return {"ok", FinishReason::kStop};
  }
  std::size_t max_in_flight() const override { return 2; }

 private:
  std::string needle_;
};

}  // namespace

TEST_CASE("photosynthesis build yields the expected topology") {
  auto mock = MockGenerator::FromScript(fixtures::SunlightScript());
  BuildResult result = BuildGraph(fixtures::SunlightSpec(), *mock);
  const InfluenceGraph &g = result.graph;

  CHECK(mock->call_count() == 6);
  CHECK(g.passage_id == "photosynthesis");
  REQUIRE(g.nodes.size() == 5);
  CHECK(g.edges.size() == 4);
  CHECK(HasEdge(g, "more sunlight", "plants trap sunlight", Sign::kPositive));
  CHECK(HasEdge(g, "more sunlight", "plants grow taller", Sign::kPositive));
  CHECK(HasEdge(g, "bright skies", "more sunlight", Sign::kPositive));
  CHECK(HasEdge(g, "cloudy skies", "more sunlight", Sign::kNegative));
  CHECK(result.attachments.size() == 4);
  CHECK(result.warnings.size() == 2);
  CHECK(Validate(g).ok());

  const std::string listing = AdjacencyListing(g);
  CHECK(listing.find("more sunlight --helps--> plants trap sunlight") != std::string::npos);
  CHECK(listing.find("cloudy skies --hurts--> more sunlight") != std::string::npos);
}

TEST_CASE("build output is deterministic under concurrency") {
  std::string first;
  for (int run = 0; run < 10; ++run) {
    auto mock = MockGenerator::FromScript(fixtures::SunlightScript());
    mock->set_max_in_flight(1 + run % 4);
    BuildResult r = BuildGraph(fixtures::SunlightSpec(), *mock);
    std::string dump = AdjacencyListing(r.graph);
    for (const EventNode &n : r.graph.nodes) dump += n.id + "|" + n.text + "\n";
    for (const std::string &w : r.warnings) dump += w + "\n";
    if (run == 0) first = dump;
    CHECK(dump == first);
  }
}

TEST_CASE("equivalent generations merge into one node") {
  BuildSpec spec;
  spec.passage = {"weather", {"Clouds form.", "Rain falls."}};
  spec.seed = "warmer ocean";
  spec.relations = {RelationKind::Helps()};
  spec.hops = {Hop(1), Hop(2)};
  const std::string p = spec.passage.Text();
  auto mock = MockGenerator::FromScript(
      {{RenderQuery(p, "warmer ocean", RelationKind::Helps(), Hop(1)).text, "More Rain"},
       {RenderQuery(p, "warmer ocean", RelationKind::Helps(), Hop(2)).text, "more  rain."}});
  BuildResult r = BuildGraph(spec, *mock);
  CHECK(r.graph.nodes.size() == 2);
  CHECK(r.graph.edges.size() == 1);
  CHECK(r.attachments.size() == 2);
  CHECK(r.attachments[0].node_id == r.attachments[1].node_id);

  spec.dedup = false;
  auto again = MockGenerator::FromScript(
      {{RenderQuery(p, "warmer ocean", RelationKind::Helps(), Hop(1)).text, "More Rain"},
       {RenderQuery(p, "warmer ocean", RelationKind::Helps(), Hop(2)).text, "more  rain."}});
  BuildResult raw = BuildGraph(spec, *again);
  CHECK(raw.graph.nodes.size() == 3);
  CHECK(raw.graph.edges.size() == 2);
}

TEST_CASE("a generation equal to the seed is dropped") {
  BuildSpec spec;
  spec.passage = {"p", {"Something happens."}};
  spec.seed = "more sunlight";
  spec.relations = {RelationKind::Helps()};
  spec.hops = {Hop(1)};
  auto mock = MockGenerator::FromScript(
      {{RenderQuery(spec.passage.Text(), spec.seed, RelationKind::Helps(), Hop(1)).text,
        "More sunlight!"}});
  BuildResult r = BuildGraph(spec, *mock);
  CHECK(r.graph.nodes.size() == 1);
  CHECK(r.graph.edges.empty());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("repeats the seed") != std::string::npos);
}

TEST_CASE("normalize_event_text") {
  CHECK(NormalizeEventText("  More   Rain. ") == "more rain");
  CHECK(NormalizeEventText("CO2 rises!?") == "co2 rises");
  CHECK(NormalizeEventText("...") == "");
}

TEST_CASE("backend failures name the request") {
  FailingGenerator gen("is hurt by at 2-hop");
  try {
    BuildGraph(fixtures::SunlightSpec(), gen);
    FAIL("expected BackendUnavailable");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
    CHECK(e.is_backend_error());
    const std::string what = e.what();
    CHECK(what.find("is hurt by at 2-hop") != std::string::npos);
    CHECK(what.find("connection refused") != std::string::npos);
  }
}

TEST_CASE("build spec validation") {
  auto mock = MockGenerator::FromScript({});
  BuildSpec spec = fixtures::SunlightSpec();
  spec.seed = "  ";
  CHECK_THROWS_AS(BuildGraph(spec, *mock), Error);
  spec = fixtures::SunlightSpec();
  spec.relations.clear();
  CHECK_THROWS_AS(BuildGraph(spec, *mock), Error);
  spec = fixtures::SunlightSpec();
  spec.hops.clear();
  CHECK_THROWS_AS(BuildGraph(spec, *mock), Error);
  CHECK(mock->call_count() == 0);
}

TEST_CASE("request parameters pass through unchanged") {
  class Recorder : public Generator {
   public:
    GenerationResult Generate(const GenerationRequest &r) override {
      std::lock_guard<std::mutex> lock(mu);
      seen.push_back(r);
      return {"x", FinishReason::kStop};
    }
    std::size_t max_in_flight() const override { return 3; }
    std::mutex mu;
    std::vector<GenerationRequest> seen;
  } rec;
  BuildSpec spec = fixtures::SunlightSpec();
  spec.request_template.top_p = 0.5;
  spec.request_template.max_new_tokens = 12;
  BuildGraph(spec, rec);
  REQUIRE(rec.seen.size() == 6);
  for (const GenerationRequest &r : rec.seen) {
    CHECK(r.top_p == 0.5);
    CHECK(r.max_new_tokens == 12);
    CHECK(r.prompt.rfind(fixtures::Photosynthesis().Text(), 0) == 0);
  }
}
