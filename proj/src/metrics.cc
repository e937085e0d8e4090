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

#include "eigenkit/metrics.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <optional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "eigenkit/error.h"
#include "json.hpp"

namespace eigenkit {
namespace {

using Tokens = std::vector<std::string>;
using NgramCounts = std::map<std::vector<std::string>, int>;

bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

Tokens RequireTokens(std::string_view text, ErrorCode code, const char *what) {
  Tokens tokens = Tokenize(text);
  if (tokens.empty()) {
    throw Error(code, std::string(what) + " has no tokens");
  }
  return tokens;
}

NgramCounts CountNgrams(const Tokens &tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Tokens(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::size_t LcsLength(const Tokens &a, const Tokens &b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                    : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct SampleScores {
  double bleu[4];
  double meteor;
  double rouge;
  bool polarity_match;
};

void Accumulate(MetricScores &cell, const SampleScores &s) {
  for (int n = 0; n < 4; ++n) cell.bleu[n] += s.bleu[n];
  cell.meteor_simple += s.meteor;
  cell.rouge_l += s.rouge;
  cell.polarity_match += s.polarity_match ? 100.0 : 0.0;
  ++cell.count;
}

void Finish(MetricScores &cell) {
  if (cell.count == 0) return;
  const double n = static_cast<double>(cell.count);
  for (double &b : cell.bleu) b /= n;
  cell.meteor_simple /= n;
  cell.rouge_l /= n;
  cell.polarity_match /= n;
}

std::string Fixed(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

nlohmann::json ScoresJson(const MetricScores &s) {
  return {{"bleu_1", s.bleu[0]},       {"bleu_2", s.bleu[1]},
          {"bleu_3", s.bleu[2]},       {"bleu_4", s.bleu[3]},
          {"meteor_simple", s.meteor_simple}, {"rouge_l", s.rouge_l},
          {"polarity_match", s.polarity_match}, {"count", s.count}};
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    std::size_t b = 0, e = current.size();
    while (b < e && IsPunct(current[b])) ++b;
    while (e > b && IsPunct(current[e - 1])) --e;
    if (e > b) tokens.push_back(current.substr(b, e - b));
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

std::string_view PolarityName(Polarity polarity) {
  switch (polarity) {
    case Polarity::kIncreasing: return "increasing";
    case Polarity::kDecreasing: return "decreasing";
    case Polarity::kNeutral: return "neutral";
  }
  return "neutral";
}

PolarityLexicon PolarityLexicon::Default() {
  return {{"helps", "more", "higher", "increase", "increases", "stronger",
           "faster", "greater", "longer", "larger", "helping"},
          {"hurts", "less", "lower", "decrease", "decreases", "weaker",
           "slower", "smaller", "hurting", "softer", "fewer"}};
}

std::string PolarityLexicon::Fingerprint() const {
  std::uint64_t hash = 14695981039346656037ull;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
    hash ^= 0xff;
    hash *= 1099511628211ull;
  };
  feed("+");
  for (const std::string &w : increasing) feed(w);
  feed("-");
  for (const std::string &w : decreasing) feed(w);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << hash;
  return os.str();
}

Polarity PolarityOf(std::string_view text, const PolarityLexicon &lexicon) {
  std::string word;
  auto classify = [&]() -> std::optional<Polarity> {
    if (word.empty()) return std::nullopt;
    std::optional<Polarity> p;
    if (lexicon.increasing.contains(word)) p = Polarity::kIncreasing;
    else if (lexicon.decreasing.contains(word)) p = Polarity::kDecreasing;
    word.clear();
    return p;
  };
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (auto p = classify()) {
      return *p;
    }
  }
  if (auto p = classify()) return *p;
  return Polarity::kNeutral;
}

double PolarityMatchRate(
    std::span<const std::pair<std::string, std::string>> pairs,
    const PolarityLexicon &lexicon) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyInput, "polarity match over no pairs");
  }
  std::size_t same = 0;
  for (const auto &[candidate, reference] : pairs) {
    if (PolarityOf(candidate, lexicon) == PolarityOf(reference, lexicon)) ++same;
  }
  return 100.0 * static_cast<double>(same) / static_cast<double>(pairs.size());
}

double Bleu(std::string_view candidate, std::span<const std::string> references,
            int max_n) {
  if (max_n < 1 || max_n > 4) {
    throw Error(ErrorCode::kInvalidArgument, "BLEU order must be in 1..4");
  }
  Tokens cand = RequireTokens(candidate, ErrorCode::kEmptyCandidate, "candidate");
  std::vector<Tokens> refs;
  for (const std::string &r : references) {
    Tokens t = Tokenize(r);
    if (!t.empty()) refs.push_back(std::move(t));
  }
  if (refs.empty()) {
    throw Error(ErrorCode::kEmptyReferences, "no non-empty references");
  }

  const std::size_t orders =
      std::min<std::size_t>(static_cast<std::size_t>(max_n), cand.size());
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= orders; ++n) {
    NgramCounts cand_counts = CountNgrams(cand, n);
    NgramCounts max_ref;
    for (const Tokens &r : refs) {
      for (const auto &[gram, c] : CountNgrams(r, n)) {
        max_ref[gram] = std::max(max_ref[gram], c);
      }
    }
    double matched = 0;
    for (const auto &[gram, c] : cand_counts) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    const double total = static_cast<double>(cand.size() - n + 1);
    log_sum += std::log(std::max(matched, kBleuCountFloor) / total);
  }

  // Closest reference length, shorter on ties.
  const double c = static_cast<double>(cand.size());
  double r = static_cast<double>(refs.front().size());
  for (const Tokens &t : refs) {
    const double len = static_cast<double>(t.size());
    if (std::abs(len - c) < std::abs(r - c) ||
        (std::abs(len - c) == std::abs(r - c) && len < r)) {
      r = len;
    }
  }
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  const double score =
      100.0 * brevity * std::exp(log_sum / static_cast<double>(orders));
  return std::clamp(score, 0.0, 100.0);
}

double Bleu(std::string_view candidate, std::string_view reference, int max_n) {
  const std::string ref(reference);
  return Bleu(candidate, std::span<const std::string>(&ref, 1), max_n);
}

double RougeL(std::string_view candidate, std::string_view reference,
              double beta) {
  Tokens cand = RequireTokens(candidate, ErrorCode::kEmptyCandidate, "candidate");
  Tokens ref = RequireTokens(reference, ErrorCode::kEmptyReferences, "reference");
  const double lcs = static_cast<double>(LcsLength(cand, ref));
  if (lcs == 0) return 0.0;
  const double precision = lcs / static_cast<double>(cand.size());
  const double recall = lcs / static_cast<double>(ref.size());
  const double b2 = beta * beta;
  return 100.0 * (1.0 + b2) * precision * recall / (recall + b2 * precision);
}

double MeteorSimple(std::string_view candidate, std::string_view reference) {
  Tokens cand = RequireTokens(candidate, ErrorCode::kEmptyCandidate, "candidate");
  Tokens ref = RequireTokens(reference, ErrorCode::kEmptyReferences, "reference");

  // Greedy one-to-one alignment; prefer the occurrence that extends the
  // current chunk.
  std::vector<bool> used(ref.size(), false);
  std::size_t matches = 0, chunks = 0;
  std::optional<std::size_t> prev;
  for (const std::string &tok : cand) {
    std::optional<std::size_t> pick;
    if (prev && *prev + 1 < ref.size() && !used[*prev + 1] &&
        ref[*prev + 1] == tok) {
      pick = *prev + 1;
    } else {
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (!used[j] && ref[j] == tok) {
          pick = j;
          break;
        }
      }
    }
    if (!pick) {
      prev.reset();
      continue;
    }
    used[*pick] = true;
    ++matches;
    if (!prev || *pick != *prev + 1) ++chunks;
    prev = pick;
  }
  if (matches == 0) return 0.0;

  const double m = static_cast<double>(matches);
  const double precision = m / static_cast<double>(cand.size());
  const double recall = m / static_cast<double>(ref.size());
  const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double penalty = 0.5 * std::pow(static_cast<double>(chunks) / m, 3.0);
  return 100.0 * f_mean * (1.0 - penalty);
}

MetricReport EvaluateCorpus(std::span<const EvalSample> samples,
                            const PolarityLexicon &lexicon) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyInput, "evaluation corpus is empty");
  }

  std::vector<SampleScores> scores(samples.size());
  std::vector<std::exception_ptr> failures(samples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      try {
        const EvalSample &s = samples[i];
        SampleScores &out = scores[i];
        for (int n = 1; n <= 4; ++n) out.bleu[n - 1] = Bleu(s.candidate, s.reference, n);
        out.meteor = MeteorSimple(s.candidate, s.reference);
        out.rouge = RougeL(s.candidate, s.reference);
        out.polarity_match =
            PolarityOf(s.candidate, lexicon) == PolarityOf(s.reference, lexicon);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    const std::size_t n_workers = std::min<std::size_t>(
        samples.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }

  MetricReport report;
  report.lexicon_fingerprint = lexicon.Fingerprint();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error &e) {
        throw Error(e.code(), "sample " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    Accumulate(report.overall, scores[i]);
    Accumulate(report.breakdown[{samples[i].relation, samples[i].hop}], scores[i]);
  }
  Finish(report.overall);
  for (auto &[key, cell] : report.breakdown) Finish(cell);
  return report;
}

std::string MetricReport::ToText() const {
  std::vector<std::vector<std::string>> rows = {
      {"Relation", "Hop", "N", "BLEU-1", "BLEU-2", "BLEU-3", "BLEU-4",
       "meteor_simple", "ROUGE-L", "Polarity"}};
  auto row = [](std::string rel, std::string hop, const MetricScores &s) {
    return std::vector<std::string>{
        std::move(rel),      std::move(hop),        std::to_string(s.count),
        Fixed(s.bleu[0]),    Fixed(s.bleu[1]),      Fixed(s.bleu[2]),
        Fixed(s.bleu[3]),    Fixed(s.meteor_simple), Fixed(s.rouge_l),
        Fixed(s.polarity_match)};
  };
  rows.push_back(row("all", "all", overall));
  for (const auto &[key, cell] : breakdown) {
    rows.push_back(row(std::string(SurfaceForm(key.first)),
                       std::to_string(key.second) + "-hop", cell));
  }

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto &r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  for (const auto &r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c > 0) os << "  ";
      if (c < 2) {
        os << std::left << std::setw(static_cast<int>(width[c])) << r[c];
      } else {
        os << std::right << std::setw(static_cast<int>(width[c])) << r[c];
      }
    }
    os << '\n';
  }
  os << "# sentence-level scores micro-averaged per cell; BLEU count floor "
     << kBleuCountFloor << "; ROUGE-L beta " << kRougeBeta
     << "; meteor_simple is exact-match only\n";
  return os.str();
}

std::string MetricReport::ToJson() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto &[key, cell] : breakdown) {
    nlohmann::json j = ScoresJson(cell);
    j["relation"] = SurfaceForm(key.first);
    j["hop"] = key.second;
    cells.push_back(std::move(j));
  }
  nlohmann::json doc = {
      {"overall", ScoresJson(overall)},
      {"breakdown", std::move(cells)},
      {"conventions",
       {{"averaging", "sentence-level, micro-averaged"},
        {"bleu_count_floor", kBleuCountFloor},
        {"rouge_beta", kRougeBeta},
        {"meteor", "meteor_simple (exact match only)"},
        {"tokenization", "lowercase, whitespace split, edge punctuation stripped"},
        {"polarity_lexicon", lexicon_fingerprint}}}};
  return doc.dump(2) + "\n";
}

}  // namespace eigenkit
