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

#include "eigenkit/templating.h"

#include <cctype>
#include <charconv>

#include "eigenkit/error.h"

namespace eigenkit {
namespace {

constexpr std::string_view kFrame = "what does ";
constexpr std::string_view kHopSuffix = "-hop";
constexpr std::string_view kAt = " at ";

[[noreturn]] void Malformed(const std::string &query, std::string_view why) {
  throw Error(ErrorCode::kMalformedQuery,
              "malformed query (" + std::string(why) + "): " + query);
}

// Positions where the frame starts at the beginning or after a space.
std::vector<std::size_t> FramePositions(std::string_view text) {
  std::vector<std::size_t> found;
  for (std::size_t pos = text.find(kFrame); pos != std::string_view::npos;
       pos = text.find(kFrame, pos + 1)) {
    if (pos == 0 || text[pos - 1] == ' ') found.push_back(pos);
  }
  return found;
}

bool EndsWith(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         text.substr(text.size() - suffix.size()) == suffix;
}

}  // namespace

std::string NormalizeSpaces(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

QueryString RenderQuery(std::optional<std::string_view> passage_text,
                        std::string_view source, RelationKind relation,
                        std::optional<Hop> hop) {
  std::string src = NormalizeSpaces(source);
  if (src.empty()) {
    throw Error(ErrorCode::kEmptySource, "query source event is empty");
  }
  std::string text;
  if (passage_text) {
    text = NormalizeSpaces(*passage_text);
    if (!text.empty()) text += ' ';
  }
  text += kFrame;
  text += src;
  text += ' ';
  text += SurfaceForm(relation);
  if (hop) {
    text += kAt;
    text += std::to_string(hop->count());
    text += kHopSuffix;
  }
  text += '?';
  return {std::move(text)};
}

QueryString RenderSample(const DerivedSample &sample, const Passage *passage,
                         const DerivationConfig &config) {
  std::optional<std::string> passage_text;
  if (config.include_paragraph && passage != nullptr) {
    passage_text = passage->Text();
  }
  std::optional<Hop> hop;
  if (config.include_hop) hop = sample.hop;
  return RenderQuery(passage_text, sample.source_text, sample.relation, hop);
}

ParsedQuery ParseQuery(const QueryString &query) {
  std::string_view text = query.text;
  std::vector<std::size_t> frames = FramePositions(text);
  if (frames.empty()) Malformed(query.text, "no 'what does' frame");
  if (frames.size() > 1) Malformed(query.text, "ambiguous 'what does' frame");
  if (!EndsWith(text, "?")) Malformed(query.text, "missing '?'");

  ParsedQuery parsed;
  if (frames[0] > 0) {
    // The prefix ends with the separating space.
    parsed.passage_text = std::string(text.substr(0, frames[0] - 1));
  }
  std::string_view rest = text.substr(frames[0] + kFrame.size());
  rest.remove_suffix(1);

  // Optional trailing " at <h>-hop".
  if (EndsWith(rest, kHopSuffix)) {
    std::size_t at = rest.rfind(kAt);
    if (at != std::string_view::npos) {
      std::string_view digits = rest.substr(
          at + kAt.size(), rest.size() - kHopSuffix.size() - at - kAt.size());
      int count = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), count);
      if (!digits.empty() && ec == std::errc() &&
          ptr == digits.data() + digits.size() && count >= 1) {
        parsed.hop = Hop(count);
        rest = rest.substr(0, at);
      }
    }
  }

  // Longest surface forms first so "is helped by" is never read as a
  // source ending in "is".
  static const RelationKind kByLength[] = {
      RelationKind::HelpedBy(), RelationKind::HurtBy(), RelationKind::Helps(),
      RelationKind::Hurts()};
  for (RelationKind r : kByLength) {
    std::string suffix = " " + std::string(SurfaceForm(r));
    if (EndsWith(rest, suffix) && rest.size() > suffix.size()) {
      parsed.relation = r;
      parsed.source = std::string(rest.substr(0, rest.size() - suffix.size()));
      return parsed;
    }
  }
  Malformed(query.text, "unrecognized relation");
}

}  // namespace eigenkit
