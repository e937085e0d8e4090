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

#include "eigenkit/graph.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "eigenkit/error.h"

namespace eigenkit {
namespace {

constexpr std::array<RelationKind, 4> kAllRelations = {
    RelationKind::Helps(), RelationKind::Hurts(), RelationKind::HelpedBy(),
    RelationKind::HurtBy()};

bool IsBlank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::string_view FindingName(FindingKind kind) {
  switch (kind) {
    case FindingKind::kDanglingEndpoint: return "dangling-endpoint";
    case FindingKind::kSelfLoop: return "self-loop";
    case FindingKind::kDuplicateEdge: return "duplicate-edge";
    case FindingKind::kEmptyText: return "empty-text";
    case FindingKind::kDuplicateNodeId: return "duplicate-node-id";
    case FindingKind::kContradictoryEdges: return "contradictory-edges";
  }
  return "unknown";
}

}  // namespace

Sign Compose(std::span<const Sign> signs) {
  Sign result = Sign::kPositive;
  for (Sign s : signs) result = result * s;
  return result;
}

std::string_view SignName(Sign sign) {
  return sign == Sign::kPositive ? "helps" : "hurts";
}

std::optional<Sign> ParseSign(std::string_view name) {
  if (name == "helps") return Sign::kPositive;
  if (name == "hurts") return Sign::kNegative;
  return std::nullopt;
}

std::span<const RelationKind> AllRelations() { return kAllRelations; }

std::string_view SurfaceForm(RelationKind relation) {
  if (relation.direction == Direction::kForward) {
    return relation.sign == Sign::kPositive ? "helps" : "hurts";
  }
  return relation.sign == Sign::kPositive ? "is helped by" : "is hurt by";
}

std::optional<RelationKind> ParseRelation(std::string_view surface) {
  for (RelationKind r : kAllRelations) {
    if (SurfaceForm(r) == surface) return r;
  }
  return std::nullopt;
}

Hop::Hop(int count) : count_(count) {
  if (count < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "hop count must be >= 1, got " + std::to_string(count));
  }
}

const EventNode *InfluenceGraph::FindNode(std::string_view id) const {
  for (const EventNode &n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<Path> EnumeratePaths(const InfluenceGraph &graph,
                                 std::string_view source, Hop max_hop) {
  if (graph.FindNode(source) == nullptr) {
    throw Error(ErrorCode::kUnknownNode,
                "unknown source node '" + std::string(source) + "'");
  }

  // Ordered adjacency: successor id, then sign. Duplicate edges collapse and
  // edges to unknown nodes are ignored.
  std::map<std::string, std::set<std::pair<std::string, Sign>>, std::less<>>
      out;
  for (const InfluenceEdge &e : graph.edges) {
    if (graph.FindNode(e.source) == nullptr ||
        graph.FindNode(e.target) == nullptr) {
      continue;
    }
    out[e.source].emplace(e.target, e.sign);
  }

  std::vector<Path> paths;
  Path current;
  current.nodes.emplace_back(source);
  std::unordered_set<std::string> on_path = {std::string(source)};

  auto visit = [&](auto &&self, const std::string &at) -> void {
    if (current.hops() >= max_hop.count()) return;
    auto it = out.find(at);
    if (it == out.end()) return;
    for (const auto &[next, sign] : it->second) {
      if (on_path.contains(next)) continue;
      current.nodes.push_back(next);
      current.signs.push_back(sign);
      on_path.insert(next);
      paths.push_back(current);
      self(self, next);
      on_path.erase(next);
      current.nodes.pop_back();
      current.signs.pop_back();
    }
  };
  visit(visit, current.nodes.front());
  // Pre-order is already sorted unless contradictory parallel edges put a
  // path's sibling after its extensions.
  std::sort(paths.begin(), paths.end(), [](const Path &a, const Path &b) {
    return std::tie(a.nodes, a.signs) < std::tie(b.nodes, b.signs);
  });
  return paths;
}

bool ValidationReport::ok() const {
  return std::none_of(findings.begin(), findings.end(), [](const Finding &f) {
    return f.severity == Severity::kError;
  });
}

std::vector<Finding> ValidationReport::errors() const {
  std::vector<Finding> result;
  for (const Finding &f : findings) {
    if (f.severity == Severity::kError) result.push_back(f);
  }
  return result;
}

std::string ValidationReport::Summary() const {
  std::ostringstream os;
  bool first = true;
  for (const Finding &f : findings) {
    if (!first) os << "; ";
    first = false;
    os << FindingName(f.kind) << ": " << f.message;
  }
  return os.str();
}

ValidationReport Validate(const InfluenceGraph &graph) {
  ValidationReport report;
  auto add = [&](FindingKind kind, Severity severity, std::string message) {
    report.findings.push_back({kind, severity, std::move(message)});
  };

  std::unordered_set<std::string> ids;
  for (const EventNode &n : graph.nodes) {
    if (!ids.insert(n.id).second) {
      add(FindingKind::kDuplicateNodeId, Severity::kError,
          "node id '" + n.id + "' appears more than once");
    }
    if (IsBlank(n.text)) {
      add(FindingKind::kEmptyText, Severity::kError,
          "node '" + n.id + "' has empty text");
    }
  }

  std::set<InfluenceEdge> seen;
  std::map<std::pair<std::string, std::string>, std::set<Sign>> signs_by_pair;
  for (const InfluenceEdge &e : graph.edges) {
    const std::string label = e.source + " -> " + e.target;
    for (const std::string *end : {&e.source, &e.target}) {
      if (!ids.contains(*end)) {
        add(FindingKind::kDanglingEndpoint, Severity::kError,
            "edge " + label + " references unknown node '" + *end + "'");
      }
    }
    if (e.source == e.target) {
      add(FindingKind::kSelfLoop, Severity::kError, "self-loop on " + label);
    }
    if (!seen.insert(e).second) {
      add(FindingKind::kDuplicateEdge, Severity::kError,
          "duplicate edge " + label + " (" + std::string(SignName(e.sign)) +
              ")");
    }
    signs_by_pair[{e.source, e.target}].insert(e.sign);
  }
  for (const auto &[pair, signs] : signs_by_pair) {
    if (signs.size() > 1) {
      add(FindingKind::kContradictoryEdges, Severity::kWarning,
          pair.first + " both helps and hurts " + pair.second);
    }
  }
  return report;
}

}  // namespace eigenkit
