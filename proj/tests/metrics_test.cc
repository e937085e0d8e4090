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

#include <random>

#include "eigenkit/error.h"
#include "eigenkit/metrics.h"
#include "json.hpp"
#include "oracles.h"

using namespace eigenkit;

namespace {

constexpr double kTol = 0.01;

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidArgument;
}

std::string RandomPhrase(std::mt19937 &rng, const std::vector<std::string> &vocab,
                         int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::string s;
  for (int i = len(rng); i > 0; --i) s += (s.empty() ? "" : " ") + vocab[pick(rng)];
  return s;
}

// Distinct tokens drawn without replacement.
std::string DistinctPhrase(std::mt19937 &rng, std::vector<std::string> vocab, int n) {
  std::shuffle(vocab.begin(), vocab.end(), rng);
  std::string s;
  for (int i = 0; i < n; ++i) s += (s.empty() ? "" : " ") + vocab[i];
  return s;
}

const std::vector<std::string> kVocab = {"more", "less", "rain", "plants", "grow",
                                         "sun", "water", "fewer", "rabbits", "oil"};

}  // namespace

TEST_CASE("tokenize lowercases and strips edge punctuation") {
  CHECK(Tokenize("More Rain, falls.") == std::vector<std::string>{"more", "rain", "falls"});
  CHECK(Tokenize("  co2-rich   air!! ") == std::vector<std::string>{"co2-rich", "air"});
  CHECK(Tokenize("... ,").empty());
}

TEST_CASE("reference values") {
  CHECK(std::abs(Bleu("more plants grow", "more plants", 1) - 200.0 / 3.0) < kTol);
  CHECK(std::abs(RougeL("more rabbits", "more babies") - 50.0) < kTol);
  CHECK(std::abs(MeteorSimple("more rain", "more snow") - 25.0) < kTol);
  CHECK(std::abs(MeteorSimple("plants grow taller", "plants grow taller") - 98.1481) < kTol);
}

TEST_CASE("identity and disjoint inputs") {
  for (const char *s : {"more rain", "the plant grows taller quickly", "sun"}) {
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(Bleu(s, s, n) - 100.0) < kTol);
    CHECK(std::abs(RougeL(s, s) - 100.0) < kTol);
  }
  CHECK(Bleu("more rain", "less snow", 1) < 1e-6);
  CHECK(Bleu("more rain", "less snow", 4) < 1e-6);
  CHECK(RougeL("more rain", "less snow") == 0.0);
  CHECK(MeteorSimple("more rain", "less snow") == 0.0);
}

TEST_CASE("BLEU clips repeated candidate n-grams") {
  CHECK(std::abs(Bleu("rain rain rain", "rain falls", 1) - 100.0 / 3.0) < kTol);
}

TEST_CASE("BLEU order is reduced for short candidates") {
  // A one-token candidate has no bigrams; BLEU-4 falls back to unigrams.
  CHECK(std::abs(Bleu("rain", "rain", 4) - 100.0) < kTol);
  CHECK(std::abs(Bleu("rain", "rain", 4) - Bleu("rain", "rain", 1)) < kTol);
}

TEST_CASE("BLEU with several references uses max counts and the closest length") {
  std::vector<std::string> refs = {"more rain falls", "rain"};
  // Closest reference length to 2 tokens: 1 and 3 are tied; the shorter wins.
  CHECK(std::abs(Bleu("more rain", refs, 1) - 100.0) < kTol);
  std::vector<std::string> refs2 = {"", "more rain"};
  CHECK(std::abs(Bleu("more rain", refs2, 2) - 100.0) < kTol);
}

TEST_CASE("metrics agree with the independent oracles") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string c = RandomPhrase(rng, kVocab, 1, 7);
    const std::string r = RandomPhrase(rng, kVocab, 1, 7);
    for (int n = 1; n <= 4; ++n) {
      CHECK(std::abs(Bleu(c, r, n) - oracle::NaiveBleu(c, r, n)) < kTol);
    }
    CHECK(std::abs(RougeL(c, r) - oracle::NaiveRougeL(c, r)) < kTol);

    std::uniform_int_distribution<int> len(1, 6);
    const std::string dc = DistinctPhrase(rng, kVocab, len(rng));
    const std::string dr = DistinctPhrase(rng, kVocab, len(rng));
    CHECK(std::abs(MeteorSimple(dc, dr) - oracle::MeteorDistinctTokens(dc, dr)) < kTol);
  }
}

TEST_CASE("BLEU does not decrease when a missing reference token is appended") {
  std::mt19937 rng(23);
  const std::vector<std::string> extra = {"alpha", "beta", "gamma"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::string c = RandomPhrase(rng, kVocab, 2, 6);
    const std::string r = RandomPhrase(rng, kVocab, 2, 6);
    // Appending a fresh token to both sides adds one matched unigram.
    const std::string w = extra[trial % extra.size()];
    CHECK(Bleu(c + " " + w, r + " " + w, 1) + 1e-9 >= Bleu(c, r, 1));
  }
}

TEST_CASE("empty inputs are rejected") {
  CHECK(CodeOf([] { Bleu("", "ref", 1); }) == ErrorCode::kEmptyCandidate);
  CHECK(CodeOf([] { Bleu("x", "", 1); }) == ErrorCode::kEmptyReferences);
  CHECK(CodeOf([] { Bleu("x", std::span<const std::string>(), 1); }) ==
        ErrorCode::kEmptyReferences);
  CHECK(CodeOf([] { Bleu("x", "x", 5); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { RougeL(" ", "x"); }) == ErrorCode::kEmptyCandidate);
  CHECK(CodeOf([] { MeteorSimple("x", ""); }) == ErrorCode::kEmptyReferences);
  CHECK(CodeOf([] { EvaluateCorpus({}, PolarityLexicon::Default()); }) ==
        ErrorCode::kEmptyInput);
  CHECK(CodeOf([] { PolarityMatchRate({}, PolarityLexicon::Default()); }) ==
        ErrorCode::kEmptyInput);
}

TEST_CASE("polarity lexicon") {
  const PolarityLexicon lex = PolarityLexicon::Default();
  CHECK(lex.increasing.size() + lex.decreasing.size() == 22);
  CHECK(PolarityOf("more oil is refined", lex) == Polarity::kIncreasing);
  CHECK(PolarityOf("there is not oil refined", lex) == Polarity::kNeutral);
  CHECK(PolarityOf("Fewer rabbits, more foxes", lex) == Polarity::kDecreasing);
  CHECK(PolarityOf("rain-lower", lex) == Polarity::kDecreasing);
  CHECK(PolarityOf("", lex) == Polarity::kNeutral);

  std::vector<std::pair<std::string, std::string>> one = {
      {"more oil is refined", "there is not oil refined"}};
  CHECK(PolarityMatchRate(one, lex) == 0.0);
  std::vector<std::pair<std::string, std::string>> two = {
      {"more rain", "higher rainfall"}, {"less sun", "more sun"}};
  CHECK(std::abs(PolarityMatchRate(two, lex) - 50.0) < kTol);

  CHECK(lex.Fingerprint() == PolarityLexicon::Default().Fingerprint());
  PolarityLexicon changed = lex;
  changed.increasing.insert("bigger");
  CHECK(changed.Fingerprint() != lex.Fingerprint());
}

TEST_CASE("evaluate_corpus cells equal scoring each subset alone") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> hop(1, 3);
  std::uniform_int_distribution<std::size_t> rel(0, 3);
  std::vector<EvalSample> samples;
  for (int i = 0; i < 200; ++i) {
    samples.push_back({RandomPhrase(rng, kVocab, 1, 5), RandomPhrase(rng, kVocab, 1, 5),
                       AllRelations()[rel(rng)], hop(rng)});
  }
  const PolarityLexicon lex = PolarityLexicon::Default();
  MetricReport report = EvaluateCorpus(samples, lex);
  CHECK(report.overall.count == samples.size());
  CHECK(report.lexicon_fingerprint == lex.Fingerprint());

  std::size_t covered = 0;
  for (const auto &[key, cell] : report.breakdown) {
    double bleu2 = 0, rouge = 0, meteor = 0, polarity = 0;
    std::size_t n = 0;
    for (const EvalSample &s : samples) {
      if (s.relation != key.first || s.hop != key.second) continue;
      bleu2 += oracle::NaiveBleu(s.candidate, s.reference, 2);
      rouge += oracle::NaiveRougeL(s.candidate, s.reference);
      meteor += MeteorSimple(s.candidate, s.reference);
      polarity += PolarityOf(s.candidate, lex) == PolarityOf(s.reference, lex) ? 100 : 0;
      ++n;
    }
    REQUIRE(n == cell.count);
    CHECK(std::abs(cell.bleu[1] - bleu2 / n) < kTol);
    CHECK(std::abs(cell.rouge_l - rouge / n) < kTol);
    CHECK(std::abs(cell.meteor_simple - meteor / n) < kTol);
    CHECK(std::abs(cell.polarity_match - polarity / n) < kTol);
    covered += n;
  }
  CHECK(covered == samples.size());

  // Overall is the count-weighted mean of the cells.
  double weighted = 0;
  for (const auto &[key, cell] : report.breakdown) weighted += cell.rouge_l * cell.count;
  CHECK(std::abs(report.overall.rouge_l - weighted / samples.size()) < kTol);
}

TEST_CASE("report renders text and json") {
  std::vector<EvalSample> samples = {{"more rain", "more rain", RelationKind::Helps(), 1},
                                     {"less sun", "more sun", RelationKind::HurtBy(), 2}};
  MetricReport report = EvaluateCorpus(samples, PolarityLexicon::Default());
  const std::string text = report.ToText();
  CHECK(text.find("\nall ") != std::string::npos);
  CHECK(text.find("is hurt by") != std::string::npos);
  nlohmann::json j = nlohmann::json::parse(report.ToJson());
  CHECK(j["overall"]["count"] == 2);
  CHECK(j.contains("breakdown"));
  CHECK(j["conventions"]["polarity_lexicon"] == report.lexicon_fingerprint);
  CHECK(report.ToJson() == EvaluateCorpus(samples, PolarityLexicon::Default()).ToJson());
}
