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

#ifndef EIGENKIT_METRICS_H_
#define EIGENKIT_METRICS_H_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eigenkit/graph.h"

namespace eigenkit {

// Lowercases, splits on whitespace and strips leading/trailing punctuation
// from each token; tokens that are pure punctuation are dropped.
std::vector<std::string> Tokenize(std::string_view text);

enum class Polarity { kIncreasing, kDecreasing, kNeutral };

std::string_view PolarityName(Polarity polarity);

struct PolarityLexicon {
  std::set<std::string> increasing;
  std::set<std::string> decreasing;

  // The 22 hand-curated direction-of-change words.
  static PolarityLexicon Default();

  // FNV-1a over the sorted word lists, hex encoded. Recorded in run
  // manifests.
  std::string Fingerprint() const;
};

// Class of the first lexicon word in the text (case-insensitive, split on
// anything that is not a letter or digit); Neutral if none.
Polarity PolarityOf(std::string_view text, const PolarityLexicon &lexicon);

// Percentage of (candidate, reference) pairs with equal polarity. Throws
// Error(kEmptyInput) on an empty list.
double PolarityMatchRate(
    std::span<const std::pair<std::string, std::string>> pairs,
    const PolarityLexicon &lexicon);

inline constexpr double kBleuCountFloor = 1e-9;

// Sentence BLEU-max_n (1..4) in percent: geometric mean of clipped n-gram
// precisions times the brevity penalty against the closest reference
// length. Zero match counts are floored at kBleuCountFloor. Orders longer
// than the candidate are left out of the mean.
// Throws Error(kEmptyCandidate) / Error(kEmptyReferences).
double Bleu(std::string_view candidate, std::span<const std::string> references,
            int max_n);
double Bleu(std::string_view candidate, std::string_view reference, int max_n);

inline constexpr double kRougeBeta = 1.2;

// LCS-based ROUGE-L F-measure in percent.
double RougeL(std::string_view candidate, std::string_view reference,
              double beta = kRougeBeta);

// Exact-match METEOR variant in percent:
//   F_mean = 10PR / (R + 9P), penalty = 0.5 (chunks / matches)^3,
//   score = F_mean (1 - penalty).
// No stemming or synonym stages.
double MeteorSimple(std::string_view candidate, std::string_view reference);

struct MetricScores {
  double bleu[4] = {0, 0, 0, 0};  // BLEU-1..BLEU-4
  double meteor_simple = 0;
  double rouge_l = 0;
  double polarity_match = 0;
  std::size_t count = 0;
};

struct EvalSample {
  std::string candidate;
  std::string reference;
  RelationKind relation;
  int hop = 1;
};

// Overall scores plus one cell per (relation, hop) present in the input.
// Sentence-level scores are micro-averaged over the samples of each cell.
struct MetricReport {
  MetricScores overall;
  std::map<std::pair<RelationKind, int>, MetricScores> breakdown;
  std::string lexicon_fingerprint;

  // Aligned table: overall row followed by per-(relation, hop) rows.
  std::string ToText() const;
  // Structured JSON document including the scoring conventions.
  std::string ToJson() const;
};

// Throws Error(kEmptyInput) on an empty corpus.
MetricReport EvaluateCorpus(std::span<const EvalSample> samples,
                            const PolarityLexicon &lexicon);

}  // namespace eigenkit

#endif  // EIGENKIT_METRICS_H_
