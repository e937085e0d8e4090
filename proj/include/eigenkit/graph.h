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

#ifndef EIGENKIT_GRAPH_H_
#define EIGENKIT_GRAPH_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eigenkit {

// Edge annotation of an influence graph. Under composition the two signs
// form the parity group: Positive is the identity and each sign is its own
// inverse.
enum class Sign : std::uint8_t { kPositive, kNegative };

constexpr Sign operator*(Sign a, Sign b) {
  return a == b ? Sign::kPositive : Sign::kNegative;
}

// Composed sign of a chain: Negative iff the chain holds an odd number of
// Negative entries. The empty chain composes to Positive.
Sign Compose(std::span<const Sign> signs);

// "helps" / "hurts", the edge serialization of a sign.
std::string_view SignName(Sign sign);
std::optional<Sign> ParseSign(std::string_view name);

enum class Direction : std::uint8_t { kForward, kInverse };

// One of the four influence relations: a sign plus the direction in which
// the influence is read.
struct RelationKind {
  Sign sign = Sign::kPositive;
  Direction direction = Direction::kForward;

  static constexpr RelationKind Helps() {
    return {Sign::kPositive, Direction::kForward};
  }
  static constexpr RelationKind Hurts() {
    return {Sign::kNegative, Direction::kForward};
  }
  static constexpr RelationKind HelpedBy() {
    return {Sign::kPositive, Direction::kInverse};
  }
  static constexpr RelationKind HurtBy() {
    return {Sign::kNegative, Direction::kInverse};
  }

  auto operator<=>(const RelationKind &) const = default;
};

// All four relations in canonical order: helps, hurts, is helped by,
// is hurt by.
std::span<const RelationKind> AllRelations();

// Canonical surface form: "helps", "hurts", "is helped by", "is hurt by".
std::string_view SurfaceForm(RelationKind relation);
std::optional<RelationKind> ParseRelation(std::string_view surface);

// Flips direction and keeps the sign.
constexpr RelationKind Invert(RelationKind relation) {
  return {relation.sign, relation.direction == Direction::kForward
                             ? Direction::kInverse
                             : Direction::kForward};
}

// Distance between two events along a reasoning chain. Always >= 1.
class Hop {
 public:
  // Throws Error(kInvalidArgument) for counts below 1.
  explicit Hop(int count);

  int count() const { return count_; }

  auto operator<=>(const Hop &) const = default;

 private:
  int count_;
};

struct EventNode {
  std::string id;
  std::string text;
};

struct InfluenceEdge {
  std::string source;
  std::string target;
  Sign sign = Sign::kPositive;

  auto operator<=>(const InfluenceEdge &) const = default;
};

// Events of one passage and the signed influences between them. Plain value
// type; call Validate() to check the structural invariants.
struct InfluenceGraph {
  std::string passage_id;
  std::vector<EventNode> nodes;
  std::vector<InfluenceEdge> edges;

  const EventNode *FindNode(std::string_view id) const;
};

// A simple directed path. signs[i] annotates the edge nodes[i] -> nodes[i+1].
struct Path {
  std::vector<std::string> nodes;
  std::vector<Sign> signs;

  int hops() const { return static_cast<int>(signs.size()); }
  Sign sign() const { return Compose(signs); }

  bool operator==(const Path &) const = default;
};

// Every simple path leaving `source` with 1..max_hop edges, ordered
// lexicographically by node-id sequence (ties between parallel edges of
// different sign put Positive first). Throws Error(kUnknownNode) when
// source is not in the graph.
std::vector<Path> EnumeratePaths(const InfluenceGraph &graph,
                                 std::string_view source, Hop max_hop);

enum class FindingKind {
  kDanglingEndpoint,
  kSelfLoop,
  kDuplicateEdge,
  kEmptyText,
  kDuplicateNodeId,
  kContradictoryEdges,
};

enum class Severity { kError, kWarning };

struct Finding {
  FindingKind kind;
  Severity severity;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  // No error-severity findings. Contradictory parallel edges are reported
  // as warnings and do not make a graph invalid.
  bool ok() const;
  std::vector<Finding> errors() const;
  std::string Summary() const;
};

ValidationReport Validate(const InfluenceGraph &graph);

}  // namespace eigenkit

#endif  // EIGENKIT_GRAPH_H_
