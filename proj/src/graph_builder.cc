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

#include "eigenkit/graph_builder.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "eigenkit/error.h"
#include "eigenkit/templating.h"

namespace eigenkit {
namespace {

struct Slot {
  RelationKind relation;
  Hop hop;
};

std::string SlotLabel(const Slot &slot) {
  return std::string(SurfaceForm(slot.relation)) + " at " +
         std::to_string(slot.hop.count()) + "-hop";
}

// "is helped by" -> "is-helped-by"
std::string Slug(std::string_view surface) {
  std::string s(surface);
  std::replace(s.begin(), s.end(), ' ', '-');
  return s;
}

}  // namespace

void BuildSpec::Validate() const {
  if (NormalizeSpaces(seed).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "seed event is empty");
  }
  if (relations.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no relations requested");
  }
  if (hops.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no hops requested");
  }
}

std::string NormalizeEventText(std::string_view text) {
  std::string out = NormalizeSpaces(text);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  while (!out.empty() && std::ispunct(static_cast<unsigned char>(out.back()))) {
    out.pop_back();
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

BuildResult BuildGraph(const BuildSpec &spec, Generator &generator) {
  spec.Validate();

  std::vector<Slot> slots;
  {
    std::set<std::pair<RelationKind, Hop>> seen;
    for (RelationKind r : spec.relations) {
      for (Hop h : spec.hops) {
        if (seen.emplace(r, h).second) slots.push_back({r, h});
      }
    }
  }

  const std::string passage_text = spec.passage.Text();
  std::vector<GenerationRequest> requests;
  for (const Slot &slot : slots) {
    GenerationRequest req = spec.request_template;
    req.prompt = RenderQuery(passage_text, spec.seed, slot.relation, slot.hop).text;
    requests.push_back(std::move(req));
  }

  // Fan out, bounded by the generator's in-flight limit.
  std::vector<GenerationResult> results(slots.size());
  std::vector<std::exception_ptr> failures(slots.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < slots.size(); i = next++) {
      try {
        results[i] = Generate(generator, requests[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t n = std::min(slots.size(),
                                   std::max<std::size_t>(1, generator.max_in_flight()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const Error &e) {
      throw Error(e.code(), "generation for (" + SlotLabel(slots[i]) +
                                ") failed: " + e.what());
    }
  }

  BuildResult out;
  out.graph.passage_id = spec.passage.passage_id;
  const std::string seed_text = NormalizeSpaces(spec.seed);
  const std::string seed_key = NormalizeEventText(seed_text);
  const std::string seed_id = spec.dedup ? seed_key : "seed";
  out.graph.nodes.push_back({seed_id, seed_text});

  std::set<InfluenceEdge> edges;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot &slot = slots[i];
    const std::string text = NormalizeSpaces(results[i].text);
    if (text.empty()) {
      out.warnings.push_back("empty generation for (" + SlotLabel(slot) +
                             "); skipped");
      continue;
    }
    const std::string key = NormalizeEventText(text);
    if (key.empty() || (spec.dedup && key == seed_key)) {
      out.warnings.push_back("generation for (" + SlotLabel(slot) + ") '" +
                             text + "' repeats the seed; skipped");
      continue;
    }
    const std::string id =
        spec.dedup ? key
                   : Slug(SurfaceForm(slot.relation)) + "-" +
                         std::to_string(slot.hop.count());

    InfluenceEdge edge =
        slot.relation.direction == Direction::kForward
            ? InfluenceEdge{seed_id, id, slot.relation.sign}
            : InfluenceEdge{id, seed_id, slot.relation.sign};
    if (out.graph.FindNode(id) == nullptr) {
      out.graph.nodes.push_back({id, text});
    }
    // A merged node produced again by the same sign and direction keeps its
    // single edge; the attachment is still recorded.
    if (edges.insert(edge).second) out.graph.edges.push_back(edge);
    out.attachments.push_back({id, slot.relation, slot.hop});
  }
  return out;
}

std::string AdjacencyListing(const InfluenceGraph &graph) {
  std::ostringstream os;
  for (const InfluenceEdge &e : graph.edges) {
    const EventNode *from = graph.FindNode(e.source);
    const EventNode *to = graph.FindNode(e.target);
    os << (from ? from->text : e.source) << " --" << SignName(e.sign) << "--> "
       << (to ? to->text : e.target) << '\n';
  }
  return os.str();
}

}  // namespace eigenkit
