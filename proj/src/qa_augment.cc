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

#include "eigenkit/qa_augment.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "eigenkit/error.h"
#include "eigenkit/templating.h"
#include "json.hpp"

namespace eigenkit {
namespace {

std::string JoinNonEmpty(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (std::string_view p : parts) {
    std::string piece = NormalizeSpaces(p);
    if (piece.empty()) continue;
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

std::string Percent(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::string_view QALabelName(QALabel label) {
  switch (label) {
    case QALabel::kHelps: return "helps";
    case QALabel::kHurts: return "hurts";
    case QALabel::kNoEffect: return "no_effect";
  }
  return "no_effect";
}

std::optional<QALabel> ParseQALabel(std::string_view name) {
  if (name == "helps") return QALabel::kHelps;
  if (name == "hurts") return QALabel::kHurts;
  if (name == "no_effect") return QALabel::kNoEffect;
  return std::nullopt;
}

std::string_view QuestionTypeName(QuestionType type) {
  switch (type) {
    case QuestionType::kInPara: return "in-para";
    case QuestionType::kOutOfPara: return "out-of-para";
    case QuestionType::kExogenous: return "exogenous";
  }
  return "in-para";
}

std::optional<QuestionType> ParseQuestionType(std::string_view name) {
  if (name == "in-para") return QuestionType::kInPara;
  if (name == "out-of-para") return QuestionType::kOutOfPara;
  if (name == "exogenous") return QuestionType::kExogenous;
  return std::nullopt;
}

const std::array<QueryPlan, 4> &AugmentationQueries() {
  static const std::array<QueryPlan, 4> kPlan = {{
      {true, RelationKind::Helps()},
      {true, RelationKind::Hurts()},
      {false, RelationKind::HelpedBy()},
      {false, RelationKind::HurtBy()},
  }};
  return kPlan;
}

AugmentedQASample AugmentSample(const QASample &sample, Generator &generator,
                                const GenerationRequest &request_template) {
  if (NormalizeSpaces(sample.cause_event).empty() ||
      NormalizeSpaces(sample.effect_event).empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "question '" + sample.question_id + "' has an empty event");
  }
  AugmentedQASample out;
  out.base = sample;
  const std::string passage = sample.passage.Text();
  const auto &plan = AugmentationQueries();
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const std::string &source =
        plan[i].from_cause ? sample.cause_event : sample.effect_event;
    GenerationRequest req = request_template;
    req.prompt = RenderQuery(passage, source, plan[i].relation, Hop(1)).text;
    try {
      out.generated[i] = NormalizeSpaces(Generate(generator, req).text);
    } catch (const Error &e) {
      throw Error(e.code(), "question '" + sample.question_id + "': query " +
                                std::to_string(i + 1) + " of 4 (" +
                                std::string(SurfaceForm(plan[i].relation)) +
                                ") failed: " + e.what());
    }
    if (out.generated[i].empty()) {
      out.warnings.push_back("question '" + sample.question_id + "': query " +
                             std::to_string(i + 1) + " of 4 returned empty text");
    }
  }
  out.primary_sequence =
      JoinNonEmpty({passage, sample.cause_event, sample.effect_event});
  out.augmented_sequence =
      JoinNonEmpty({out.generated[0], out.generated[1], out.generated[2],
                    out.generated[3], sample.cause_event, sample.effect_event});
  return out;
}

std::vector<AugmentedQASample> AugmentAll(
    const std::vector<QASample> &samples, Generator &generator,
    const GenerationRequest &request_template) {
  std::vector<AugmentedQASample> out(samples.size());
  std::vector<std::exception_ptr> failures(samples.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size() && !failed; i = next++) {
      try {
        out[i] = AugmentSample(samples[i], generator, request_template);
      } catch (...) {
        failures[i] = std::current_exception();
        failed = true;
      }
    }
  };
  {
    const std::size_t n = std::min(
        samples.size(), std::max<std::size_t>(1, generator.max_in_flight()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  }
  for (const std::exception_ptr &f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

void TrainerConfig::Validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "loss weights must be >= 0");
  }
}

TrainingFiles EmitTrainingFiles(const std::vector<AugmentedQASample> &samples,
                                const TrainerConfig &config,
                                const std::filesystem::path &out_dir) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no augmented samples to emit");
  }
  config.Validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create " + out_dir.string() + ": " + ec.message());
  }

  TrainingFiles files{out_dir / "train.jsonl", out_dir / "trainer_config.json"};
  {
    std::ofstream os(files.records, std::ios::binary);
    for (const AugmentedQASample &s : samples) {
      nlohmann::ordered_json rec = {
          {"question_id", s.base.question_id},
          {"label", QALabelName(s.base.label)},
          {"primary_sequence", s.primary_sequence},
          {"augmented_sequence", s.augmented_sequence}};
      os << rec.dump() << '\n';
    }
    if (!os) {
      throw Error(ErrorCode::kIoFailure, "cannot write " + files.records.string());
    }
  }
  {
    std::ofstream os(files.config, std::ios::binary);
    nlohmann::ordered_json sidecar = {
        {"alpha", config.alpha},
        {"beta", config.beta},
        {"loss", "alpha * L_primary + beta * L_augmented"},
        {"records", files.records.filename().string()},
        {"num_records", samples.size()}};
    os << sidecar.dump(2) << '\n';
    if (!os) {
      throw Error(ErrorCode::kIoFailure, "cannot write " + files.config.string());
    }
  }
  return files;
}

AccuracyReport ScorePredictions(const std::map<std::string, QALabel> &predictions,
                                const std::vector<QASample> &gold) {
  std::vector<std::string> missing;
  for (const QASample &q : gold) {
    if (!predictions.contains(q.question_id)) missing.push_back(q.question_id);
  }
  if (!missing.empty()) {
    std::string ids;
    for (const std::string &id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw Error(ErrorCode::kMissingPrediction, "no prediction for: " + ids);
  }
  if (gold.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no gold questions to score");
  }

  AccuracyReport report;
  // Confusion counts for macro-F1: [gold][predicted].
  std::size_t confusion[3][3] = {};
  for (const QASample &q : gold) {
    const QALabel predicted = predictions.at(q.question_id);
    const bool correct = predicted == q.label;
    auto tally = [correct](AccuracyCell &cell) {
      ++cell.total;
      if (correct) ++cell.correct;
    };
    tally(report.overall);
    if (q.hop_count) tally(report.by_hop[*q.hop_count]);
    if (q.question_type) tally(report.by_type[*q.question_type]);
    ++confusion[static_cast<int>(q.label)][static_cast<int>(predicted)];
  }

  double f1_sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    double tp = static_cast<double>(confusion[k][k]);
    double gold_k = 0, pred_k = 0;
    for (int j = 0; j < 3; ++j) {
      gold_k += static_cast<double>(confusion[k][j]);
      pred_k += static_cast<double>(confusion[j][k]);
    }
    if (gold_k + pred_k > 0) f1_sum += 2.0 * tp / (gold_k + pred_k);
  }
  report.macro_f1 = 100.0 * f1_sum / 3.0;
  return report;
}

std::string AccuracyReport::ToText() const {
  std::ostringstream os;
  os << "overall      " << Percent(overall.accuracy()) << "  (" << overall.correct
     << "/" << overall.total << ")\n";
  for (const auto &[hop, cell] : by_hop) {
    os << "hop " << hop << "        " << Percent(cell.accuracy()) << "  ("
       << cell.correct << "/" << cell.total << ")\n";
  }
  for (const auto &[type, cell] : by_type) {
    std::string name(QuestionTypeName(type));
    name.resize(std::max<std::size_t>(name.size(), 12), ' ');
    os << name << " " << Percent(cell.accuracy()) << "  (" << cell.correct << "/"
       << cell.total << ")\n";
  }
  os << "macro-F1     " << Percent(macro_f1) << '\n';
  return os.str();
}

std::string AccuracyReport::ToJson() const {
  auto cell_json = [](const AccuracyCell &c) {
    return nlohmann::ordered_json{
        {"accuracy", c.accuracy()}, {"correct", c.correct}, {"total", c.total}};
  };
  nlohmann::ordered_json hops = nlohmann::ordered_json::object();
  for (const auto &[hop, cell] : by_hop) hops[std::to_string(hop)] = cell_json(cell);
  nlohmann::ordered_json types = nlohmann::ordered_json::object();
  for (const auto &[type, cell] : by_type) {
    types[std::string(QuestionTypeName(type))] = cell_json(cell);
  }
  nlohmann::ordered_json doc = {{"overall", cell_json(overall)},
                                {"by_hop", hops},
                                {"by_type", types},
                                {"macro_f1", macro_f1}};
  return doc.dump(2) + "\n";
}

}  // namespace eigenkit
