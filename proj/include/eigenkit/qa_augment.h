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

#ifndef EIGENKIT_QA_AUGMENT_H_
#define EIGENKIT_QA_AUGMENT_H_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenkit/backend.h"
#include "eigenkit/derivation.h"

namespace eigenkit {

enum class QALabel { kHelps, kHurts, kNoEffect };

std::string_view QALabelName(QALabel label);
std::optional<QALabel> ParseQALabel(std::string_view name);

enum class QuestionType { kInPara, kOutOfPara, kExogenous };

std::string_view QuestionTypeName(QuestionType type);
std::optional<QuestionType> ParseQuestionType(std::string_view name);

struct QASample {
  std::string question_id;
  Passage passage;
  std::string cause_event;
  std::string effect_event;
  QALabel label = QALabel::kNoEffect;
  std::optional<int> hop_count;
  std::optional<QuestionType> question_type;
};

struct AugmentedQASample {
  QASample base;
  // Always four entries, in AugmentationQueries order. Empty generations
  // stay as empty strings.
  std::array<std::string, 4> generated;
  std::string primary_sequence;    // passage, cause, effect
  std::string augmented_sequence;  // generations, cause, effect
  std::vector<std::string> warnings;
};

struct QueryPlan {
  bool from_cause;  // source is the cause event, otherwise the effect event
  RelationKind relation;
};

// The four 1-hop queries issued per sample, in order:
//   (P, cause, helps), (P, cause, hurts),
//   (P, effect, is helped by), (P, effect, is hurt by).
const std::array<QueryPlan, 4> &AugmentationQueries();

// Issues the four queries sequentially in AugmentationQueries order. A
// backend failure is rethrown with the query index ("query 3 of 4").
AugmentedQASample AugmentSample(const QASample &sample, Generator &generator,
                                const GenerationRequest &request_template = {});

// Augments samples concurrently (bounded by the generator's in-flight limit)
// and returns them in input order.
std::vector<AugmentedQASample> AugmentAll(
    const std::vector<QASample> &samples, Generator &generator,
    const GenerationRequest &request_template = {});

struct TrainerConfig {
  double alpha = 1.0;  // weight of the primary-input loss
  double beta = 0.9;   // weight of the augmented-input loss

  // Throws Error(kInvalidArgument) on negative weights.
  void Validate() const;
};

struct TrainingFiles {
  std::filesystem::path records;
  std::filesystem::path config;
};

// Writes <out_dir>/train.jsonl (question_id, label, primary_sequence,
// augmented_sequence per line) and the <out_dir>/trainer_config.json sidecar
// carrying alpha and beta. Throws Error(kEmptyInput) on no samples and
// Error(kIoFailure) when the files cannot be written.
TrainingFiles EmitTrainingFiles(const std::vector<AugmentedQASample> &samples,
                                const TrainerConfig &config,
                                const std::filesystem::path &out_dir);

struct AccuracyCell {
  std::size_t correct = 0;
  std::size_t total = 0;

  double accuracy() const {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) /
                                  static_cast<double>(total);
  }
};

struct AccuracyReport {
  AccuracyCell overall;
  std::map<int, AccuracyCell> by_hop;
  std::map<QuestionType, AccuracyCell> by_type;
  // Macro-averaged F1 over the three labels, in percent.
  double macro_f1 = 0.0;

  std::string ToText() const;
  std::string ToJson() const;
};

// Throws Error(kMissingPrediction) listing every gold id without a
// prediction.
AccuracyReport ScorePredictions(const std::map<std::string, QALabel> &predictions,
                                const std::vector<QASample> &gold);

}  // namespace eigenkit

#endif  // EIGENKIT_QA_AUGMENT_H_
