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

#ifndef EIGENKIT_TEMPLATING_H_
#define EIGENKIT_TEMPLATING_H_

#include <optional>
#include <string>
#include <string_view>

#include "eigenkit/derivation.h"
#include "eigenkit/graph.h"

namespace eigenkit {

struct QueryString {
  std::string text;

  bool operator==(const QueryString &) const = default;
};

// Renders "<passage> what does <source> <relation> at <h>-hop?".
// An absent passage drops the prefix and an absent hop drops the
// " at <h>-hop" clause. Whitespace runs in passage and source collapse to
// single spaces. Throws Error(kEmptySource) for a blank source.
QueryString RenderQuery(std::optional<std::string_view> passage_text,
                        std::string_view source, RelationKind relation,
                        std::optional<Hop> hop);

// Renders a derived sample under the ablation switches of `config`.
QueryString RenderSample(const DerivedSample &sample, const Passage *passage,
                         const DerivationConfig &config);

struct ParsedQuery {
  std::optional<std::string> passage_text;
  std::string source;
  RelationKind relation;
  std::optional<Hop> hop;

  bool operator==(const ParsedQuery &) const = default;
};

// Inverse of RenderQuery. Throws Error(kMalformedQuery) when the
// "what does ...?" frame is missing or appears more than once, or the
// relation is not one of the four surface forms.
ParsedQuery ParseQuery(const QueryString &query);

// Trims and collapses every whitespace run to one space.
std::string NormalizeSpaces(std::string_view text);

}  // namespace eigenkit

#endif  // EIGENKIT_TEMPLATING_H_
