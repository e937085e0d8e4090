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

#include <filesystem>
#include <fstream>
#include <random>

#include "eigenkit/error.h"
#include "eigenkit/qa_augment.h"
#include "fixtures.h"
#include "json.hpp"

using namespace eigenkit;
namespace fs = std::filesystem;

namespace {

QASample Question(const std::string &id, QALabel label, std::optional<int> hop = 1,
                  std::optional<QuestionType> type = std::nullopt) {
  return {id, fixtures::Photosynthesis(), "more sunlight", "plants grow taller", label,
          hop, type};
}

std::vector<std::string> ExpectedPrompts(const QASample &q) {
  const std::string p = q.passage.Text();
  return {RenderQuery(p, q.cause_event, RelationKind::Helps(), Hop(1)).text,
          RenderQuery(p, q.cause_event, RelationKind::Hurts(), Hop(1)).text,
          RenderQuery(p, q.effect_event, RelationKind::HelpedBy(), Hop(1)).text,
          RenderQuery(p, q.effect_event, RelationKind::HurtBy(), Hop(1)).text};
}

fs::path FreshDir(const std::string &name) {
  fs::path dir = fs::temp_directory_path() /
                 ("eigenkit_qa_" + name + "_" + std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  return dir;
}

nlohmann::json ReadJson(const fs::path &path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

// Answers call n with "g<n>"; the call numbered fail_on throws.
class CountingGenerator : public Generator {
 public:
  explicit CountingGenerator(int fail_on = -1) : fail_on_(fail_on) {}
  GenerationResult Generate(const GenerationRequest &r) override {
    std::lock_guard<std::mutex> lock(mu_);
    prompts.push_back(r.prompt);
    if (static_cast<int>(prompts.size()) == fail_on_) {
      throw Error(ErrorCode::kBackendUnavailable, "timed out");
    }
    return {"g" + std::to_string(prompts.size()), FinishReason::kStop};
  }
  std::size_t max_in_flight() const override { return 1; }
  std::vector<std::string> prompts;

 private:
  int fail_on_;
  std::mutex mu_;
};

}  // namespace

TEST_CASE("augmentation issues four queries in the fixed order") {
  QASample q = Question("q1", QALabel::kHelps);
  CountingGenerator gen;
  AugmentedQASample a = AugmentSample(q, gen);
  CHECK(gen.prompts == ExpectedPrompts(q));
  CHECK(a.generated == std::array<std::string, 4>{"g1", "g2", "g3", "g4"});
  CHECK(a.primary_sequence ==
        q.passage.Text() + " more sunlight plants grow taller");
  CHECK(a.augmented_sequence == "g1 g2 g3 g4 more sunlight plants grow taller");
  CHECK(a.warnings.empty());
}

TEST_CASE("a failing query names its position") {
  CountingGenerator gen(/*fail_on=*/3);
  try {
    AugmentSample(Question("q7", QALabel::kHurts), gen);
    FAIL("expected BackendUnavailable");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
    const std::string what = e.what();
    CHECK(what.find("q7") != std::string::npos);
    CHECK(what.find("query 3 of 4") != std::string::npos);
    CHECK(what.find("is helped by") != std::string::npos);
  }
  CHECK(gen.prompts.size() == 3);
}

TEST_CASE("empty generations warn and are skipped in the joined text") {
  QASample q = Question("q2", QALabel::kNoEffect);
  auto prompts = ExpectedPrompts(q);
  auto mock = MockGenerator::FromScript(
      {{prompts[0], "more sugar"}, {prompts[1], ""}, {prompts[2], "more water"},
       {prompts[3], "less light"}});
  AugmentedQASample a = AugmentSample(q, *mock);
  CHECK(a.generated[1].empty());
  REQUIRE(a.warnings.size() == 1);
  CHECK(a.warnings[0].find("query 2 of 4") != std::string::npos);
  CHECK(a.augmented_sequence ==
        "more sugar more water less light more sunlight plants grow taller");
}

TEST_CASE("augment_all keeps input order and issues 4 calls per sample") {
  std::vector<QASample> qs;
  for (int i = 0; i < 40; ++i) {
    QASample q = Question("q" + std::to_string(i), QALabel::kHelps);
    q.cause_event = "cause " + std::to_string(i);
    qs.push_back(q);
  }
  auto mock = MockGenerator::FromScript({}, MockGenerator::Policy::kFallback, "x");
  auto out = AugmentAll(qs, *mock);
  REQUIRE(out.size() == qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) CHECK(out[i].base.question_id == qs[i].question_id);
  CHECK(mock->call_count() == 4 * qs.size());
}

TEST_CASE("training files carry the loss weights") {
  CountingGenerator gen;
  std::vector<AugmentedQASample> samples = {AugmentSample(Question("a", QALabel::kHelps), gen),
                                            AugmentSample(Question("b", QALabel::kHurts), gen)};
  fs::path dir = FreshDir("default");
  TrainingFiles files = EmitTrainingFiles(samples, TrainerConfig{}, dir);
  nlohmann::json sidecar = ReadJson(files.config);
  CHECK(sidecar["alpha"].get<double>() == 1.0);
  CHECK(sidecar["beta"].get<double>() == 0.9);
  CHECK(sidecar["num_records"] == 2);

  std::ifstream in(files.records);
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(in, line)) records.push_back(nlohmann::json::parse(line));
  REQUIRE(records.size() == 2);
  CHECK(records[0]["question_id"] == "a");
  CHECK(records[1]["label"] == "hurts");
  CHECK(records[0]["augmented_sequence"] == samples[0].augmented_sequence);

  fs::path dir2 = FreshDir("custom");
  TrainerConfig cfg;
  cfg.beta = 0.5;
  CHECK(ReadJson(EmitTrainingFiles(samples, cfg, dir2).config)["beta"].get<double>() == 0.5);

  CHECK_THROWS_AS(EmitTrainingFiles({}, TrainerConfig{}, dir), Error);
  cfg.alpha = -1;
  CHECK_THROWS_AS(EmitTrainingFiles(samples, cfg, dir), Error);
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("accuracy breakdown by hop") {
  std::vector<QASample> gold = {Question("a", QALabel::kHelps, 1),
                                Question("b", QALabel::kHurts, 1),
                                Question("c", QALabel::kNoEffect, 2),
                                Question("d", QALabel::kHelps, 3)};
  std::map<std::string, QALabel> pred = {{"a", QALabel::kHelps},
                                         {"b", QALabel::kHurts},
                                         {"c", QALabel::kHelps},
                                         {"d", QALabel::kHelps}};
  AccuracyReport r = ScorePredictions(pred, gold);
  CHECK(r.overall.accuracy() == doctest::Approx(75.0));
  CHECK(r.by_hop.at(1).accuracy() == doctest::Approx(100.0));
  CHECK(r.by_hop.at(2).accuracy() == doctest::Approx(0.0));
  CHECK(r.by_hop.at(3).accuracy() == doctest::Approx(100.0));
  // helps: tp 2, gold 2, pred 3 -> 0.8; hurts: 1.0; no_effect: 0.
  CHECK(r.macro_f1 == doctest::Approx(100.0 * 1.8 / 3.0));

  nlohmann::json j = nlohmann::json::parse(r.ToJson());
  CHECK(j["by_hop"]["2"]["accuracy"].get<double>() == 0.0);
  CHECK(r.ToText().find("hop 3") != std::string::npos);
}

TEST_CASE("missing predictions and empty gold") {
  std::vector<QASample> gold = {Question("a", QALabel::kHelps), Question("b", QALabel::kHurts)};
  try {
    ScorePredictions({{"a", QALabel::kHelps}}, gold);
    FAIL("expected MissingPrediction");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kMissingPrediction);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
  try {
    ScorePredictions({}, {});
    FAIL("expected EmptyInput");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kEmptyInput);
  }
}

TEST_CASE("overall accuracy is the count-weighted mean of the hop cells") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> label(0, 2), hop(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<QASample> gold;
    std::map<std::string, QALabel> pred;
    for (int i = 0; i < 30; ++i) {
      const std::string id = "q" + std::to_string(i);
      gold.push_back(Question(id, static_cast<QALabel>(label(rng)), hop(rng),
                              static_cast<QuestionType>(label(rng))));
      pred[id] = static_cast<QALabel>(label(rng));
    }
    AccuracyReport r = ScorePredictions(pred, gold);
    double weighted = 0, by_type = 0;
    std::size_t n = 0;
    for (const auto &[h, cell] : r.by_hop) {
      weighted += cell.accuracy() * cell.total;
      n += cell.total;
    }
    for (const auto &[t, cell] : r.by_type) by_type += cell.accuracy() * cell.total;
    CHECK(n == gold.size());
    CHECK(r.overall.accuracy() == doctest::Approx(weighted / n));
    CHECK(r.overall.accuracy() == doctest::Approx(by_type / n));
  }
}

TEST_CASE("label and type names") {
  for (QALabel l : {QALabel::kHelps, QALabel::kHurts, QALabel::kNoEffect}) {
    CHECK(ParseQALabel(QALabelName(l)) == l);
  }
  CHECK(QALabelName(QALabel::kNoEffect) == "no_effect");
  for (QuestionType t : {QuestionType::kInPara, QuestionType::kOutOfPara,
                         QuestionType::kExogenous}) {
    CHECK(ParseQuestionType(QuestionTypeName(t)) == t);
  }
  CHECK_FALSE(ParseQALabel("maybe").has_value());
}
