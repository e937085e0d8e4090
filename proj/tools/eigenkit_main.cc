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

// eigenkit: derive influence-generation corpora, render queries, build
// influence graphs through a generation backend, score generations and
// QA predictions.
//
// Exit codes: 0 success, 1 input/validation error, 2 backend error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eigenkit/backend.h"
#include "eigenkit/derivation.h"
#include "eigenkit/error.h"
#include "eigenkit/graph_builder.h"
#include "eigenkit/io.h"
#include "eigenkit/manifest.h"
#include "eigenkit/metrics.h"
#include "eigenkit/qa_augment.h"
#include "eigenkit/templating.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace eigenkit;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitBackend = 2;

std::string Num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string Bool(bool v) { return v ? "true" : "false"; }

struct AblationFlags {
  bool no_para = false;
  bool no_rev = false;
  bool no_hop = false;

  void Register(CLI::App *cmd, bool with_reverse) {
    cmd->add_flag("--no-para", no_para, "Drop the passage from rendered queries");
    if (with_reverse) {
      cmd->add_flag("--no-rev", no_rev, "Skip inverse-relation samples");
    }
    cmd->add_flag("--no-hop", no_hop, "Drop the hop clause from rendered queries");
  }
};

struct BackendFlags {
  std::string backend_url;
  std::string mock_script;
  std::optional<std::string> mock_fallback;
  std::size_t max_in_flight = 4;
  int retries = 3;
  GenerationRequest sampling;

  void Register(CLI::App *cmd) {
    cmd->add_option("--backend", backend_url,
                    "Model service base URL (default $EIGENKIT_BACKEND_URL)");
    cmd->add_option("--mock", mock_script,
                    "Scripted mock backend: JSONL of {prompt, response}");
    cmd->add_option("--mock-fallback", mock_fallback,
                    "Response for prompts missing from the mock script");
    cmd->add_option("--max-in-flight", max_in_flight, "Concurrent request limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--retries", retries, "Transport attempts per request")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--top-p", sampling.top_p, "Nucleus sampling mass");
    cmd->add_option("--max-new-tokens", sampling.max_new_tokens,
                    "Generation length cap");
    cmd->add_option("--temperature", sampling.temperature, "Sampling temperature");
    cmd->add_option("--stop-token", sampling.stop_token, "End-of-generation symbol");
  }

  std::unique_ptr<Generator> Make() const {
    if (!mock_script.empty()) {
      auto mock = MockGenerator::FromScript(
          io::ReadMockScript(mock_script),
          mock_fallback ? MockGenerator::Policy::kFallback
                        : MockGenerator::Policy::kStrict,
          mock_fallback.value_or(""));
      mock->set_max_in_flight(max_in_flight);
      return mock;
    }
    std::string url = backend_url;
    if (url.empty()) {
      if (const char *env = std::getenv("EIGENKIT_BACKEND_URL")) url = env;
    }
    if (url.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no backend: pass --backend URL, --mock FILE or set "
                  "EIGENKIT_BACKEND_URL");
    }
    RemoteOptions options;
    options.base_url = url;
    options.max_attempts = retries;
    options.max_in_flight = max_in_flight;
    return std::make_unique<RemoteGenerator>(options);
  }

  void Echo(RunManifest &m) const {
    if (!mock_script.empty()) {
      m.inputs.emplace_back("mock", mock_script);
      m.config.emplace_back("backend", "mock");
    } else {
      m.config.emplace_back("backend", backend_url.empty() ? "$EIGENKIT_BACKEND_URL"
                                                           : backend_url);
    }
    m.config.emplace_back("top_p", Num(sampling.top_p));
    m.config.emplace_back("max_new_tokens", std::to_string(sampling.max_new_tokens));
    m.config.emplace_back("temperature", Num(sampling.temperature));
    m.config.emplace_back("stop_token", sampling.stop_token);
  }
};

void EchoDerivation(RunManifest &m, const DerivationConfig &cfg) {
  m.config.emplace_back("max_hop", std::to_string(cfg.max_hop.count()));
  m.config.emplace_back("include_paragraph", Bool(cfg.include_paragraph));
  m.config.emplace_back("include_reverse", Bool(cfg.include_reverse));
  m.config.emplace_back("include_hop", Bool(cfg.include_hop));
}

std::vector<int> ParseIntList(const std::vector<std::string> &items) {
  std::vector<int> out;
  for (const std::string &item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      try {
        out.push_back(std::stoi(part));
      } catch (const std::exception &) {
        throw Error(ErrorCode::kInvalidArgument, "not an integer: " + part);
      }
    }
  }
  return out;
}

std::vector<RelationKind> ParseRelations(const std::vector<std::string> &items) {
  std::vector<RelationKind> out;
  for (const std::string &item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      part = NormalizeSpaces(part);
      if (part.empty()) continue;
      // Accept hyphenated spellings on the command line.
      if (part == "helped-by") part = "is helped by";
      if (part == "hurt-by") part = "is hurt by";
      auto rel = ParseRelation(part);
      if (!rel) throw Error(ErrorCode::kInvalidArgument, "unknown relation: " + part);
      out.push_back(*rel);
    }
  }
  return out;
}

// ---------------------------------------------------------------- derive

struct DeriveArgs {
  std::string graphs, passages, out;
  int max_hop = 3;
  AblationFlags ablation;
};

int RunDerive(const DeriveArgs &a) {
  DerivationConfig cfg;
  cfg.max_hop = Hop(a.max_hop);
  cfg.include_paragraph = !a.ablation.no_para;
  cfg.include_reverse = !a.ablation.no_rev;
  cfg.include_hop = !a.ablation.no_hop;

  std::map<std::string, io::PassageRecord> passages;
  for (io::PassageRecord &rec : io::ReadPassages(a.passages)) {
    std::string id = rec.passage.passage_id;
    passages.emplace(std::move(id), std::move(rec));
  }
  std::vector<CorpusInput> inputs;
  for (InfluenceGraph &g : io::ReadGraphs(a.graphs)) {
    auto it = passages.find(g.passage_id);
    if (it == passages.end()) {
      throw Error(ErrorCode::kPassageMismatch,
                  "no passage for graph '" + g.passage_id + "'");
    }
    if (!it->second.split) {
      throw Error(ErrorCode::kInvalidArgument,
                  "passage '" + g.passage_id + "' has no split tag");
    }
    inputs.push_back({std::move(g), it->second.passage, *it->second.split});
  }

  DatasetBundle bundle = DeriveCorpus(inputs, cfg);
  io::BundlePaths paths = io::WriteBundle(a.out, bundle);
  StatsTable stats = Stats(bundle);
  io::WriteText(fs::path(a.out) / "stats.txt", stats.ToText());

  RunManifest m;
  m.command = "derive";
  m.inputs = {{"graphs", a.graphs}, {"passages", a.passages}};
  EchoDerivation(m, cfg);
  m.Write(a.out);
  std::cerr << "derived " << bundle.size() << " samples from " << inputs.size()
            << " graphs -> " << paths.dataset.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- stats

int RunStats(const std::string &bundle_path, const std::string &out) {
  DatasetBundle bundle = io::ReadBundle(bundle_path);
  const std::string table = Stats(bundle).ToText();
  std::cout << table;
  if (!out.empty()) {
    fs::create_directories(out);
    io::WriteText(fs::path(out) / "stats.txt", table);
    RunManifest m;
    m.command = "stats";
    m.inputs = {{"bundle", bundle_path}};
    EchoDerivation(m, bundle.config);
    m.Write(out);
  }
  return 0;
}

// ---------------------------------------------------------------- render

struct RenderArgs {
  std::string bundle, passages, out;
  std::string source, relation, passage_text;
  std::optional<int> hop;
  AblationFlags ablation;
};

int RunRender(const RenderArgs &a) {
  if (a.bundle.empty()) {
    // Single query to stdout.
    if (a.relation.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "render needs --bundle or --source/--relation");
    }
    auto rel = ParseRelations({a.relation});
    if (rel.size() != 1) throw Error(ErrorCode::kInvalidArgument, "give exactly one --relation");
    std::optional<std::string_view> passage;
    if (!a.passage_text.empty() && !a.ablation.no_para) passage = a.passage_text;
    std::optional<Hop> hop;
    if (a.hop && !a.ablation.no_hop) hop = Hop(*a.hop);
    std::cout << RenderQuery(passage, a.source, rel.front(), hop).text << "\n";
    return 0;
  }

  if (a.out.empty()) throw Error(ErrorCode::kInvalidArgument, "render --bundle needs --out");
  DatasetBundle bundle = io::ReadBundle(a.bundle);
  DerivationConfig cfg = bundle.config;
  cfg.include_paragraph = cfg.include_paragraph && !a.ablation.no_para;
  cfg.include_hop = cfg.include_hop && !a.ablation.no_hop;

  std::map<std::string, Passage> passages;
  if (!a.passages.empty()) {
    for (io::PassageRecord &rec : io::ReadPassages(a.passages)) {
      std::string id = rec.passage.passage_id;
      passages.emplace(std::move(id), std::move(rec.passage));
    }
  } else if (cfg.include_paragraph) {
    throw Error(ErrorCode::kInvalidArgument,
                "render needs --passages unless --no-para is given");
  }

  std::string text;
  for (const DerivedSample &s : bundle.Flatten()) {
    const Passage *p = nullptr;
    if (cfg.include_paragraph) {
      auto it = passages.find(s.passage_id);
      if (it == passages.end()) {
        throw Error(ErrorCode::kPassageMismatch, "no passage '" + s.passage_id + "'");
      }
      p = &it->second;
    }
    nlohmann::ordered_json rec = {{"query", RenderSample(s, p, cfg).text},
                                  {"target", s.target_text},
                                  {"relation", SurfaceForm(s.relation)},
                                  {"hop", s.hop.count()},
                                  {"split", SplitName(s.split)}};
    text += rec.dump() + "\n";
  }
  fs::create_directories(a.out);
  io::WriteText(fs::path(a.out) / "queries.jsonl", text);

  RunManifest m;
  m.command = "render";
  m.inputs = {{"bundle", a.bundle}};
  if (!a.passages.empty()) m.inputs.emplace_back("passages", a.passages);
  EchoDerivation(m, cfg);
  m.Write(a.out);
  return 0;
}

// ----------------------------------------------------------- build-graph

struct BuildArgs {
  std::string passages, passage_id, seed, out;
  std::vector<std::string> relations = {"helps,hurts,is helped by,is hurt by"};
  std::vector<std::string> hops = {"1,2"};
  bool no_dedup = false;
  BackendFlags backend;
};

int RunBuildGraph(const BuildArgs &a) {
  BuildSpec spec;
  std::vector<io::PassageRecord> records = io::ReadPassages(a.passages);
  const io::PassageRecord *chosen = nullptr;
  for (const io::PassageRecord &r : records) {
    if (a.passage_id.empty() || r.passage.passage_id == a.passage_id) {
      chosen = &r;
      break;
    }
  }
  if (chosen == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "passage not found in " + a.passages);
  }
  spec.passage = chosen->passage;
  spec.seed = a.seed;
  spec.relations = ParseRelations(a.relations);
  for (int h : ParseIntList(a.hops)) spec.hops.push_back(Hop(h));
  spec.dedup = !a.no_dedup;
  spec.request_template = a.backend.sampling;
  spec.Validate();
  spec.request_template.Validate();

  std::unique_ptr<Generator> gen = a.backend.Make();
  BuildResult result = BuildGraph(spec, *gen);
  for (const std::string &w : result.warnings) std::cerr << "warning: " << w << "\n";

  fs::create_directories(a.out);
  io::WriteGraphs(fs::path(a.out) / "graph.jsonl", {result.graph});
  io::WriteText(fs::path(a.out) / "graph.txt", AdjacencyListing(result.graph));

  RunManifest m;
  m.command = "build-graph";
  m.inputs = {{"passages", a.passages}};
  m.config.emplace_back("passage_id", spec.passage.passage_id);
  m.config.emplace_back("seed", spec.seed);
  std::string rels, hops;
  for (RelationKind r : spec.relations) rels += (rels.empty() ? "" : ",") + std::string(SurfaceForm(r));
  for (Hop h : spec.hops) hops += (hops.empty() ? "" : ",") + std::to_string(h.count());
  m.config.emplace_back("relations", rels);
  m.config.emplace_back("hops", hops);
  m.config.emplace_back("dedup", Bool(spec.dedup));
  a.backend.Echo(m);
  m.Write(a.out);
  std::cerr << "built graph with " << result.graph.nodes.size() << " nodes and "
            << result.graph.edges.size() << " edges\n";
  return 0;
}

// -------------------------------------------------------------- evaluate

PolarityLexicon LoadLexicon(const std::string &path) {
  if (path.empty()) return PolarityLexicon::Default();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    PolarityLexicon lex;
    for (const auto &w : j.at("increasing")) lex.increasing.insert(w.get<std::string>());
    for (const auto &w : j.at("decreasing")) lex.decreasing.insert(w.get<std::string>());
    return lex;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

struct EvaluateArgs {
  std::string pred, ref, out, lexicon;
};

int RunEvaluate(const EvaluateArgs &a) {
  std::vector<io::EvalRecord> preds = io::ReadEvalRecords(a.pred);
  std::vector<io::EvalRecord> refs = io::ReadEvalRecords(a.ref);
  if (preds.size() != refs.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prediction and reference files differ in length (" +
                    std::to_string(preds.size()) + " vs " +
                    std::to_string(refs.size()) + ")");
  }
  std::vector<EvalSample> samples;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!refs[i].relation || !refs[i].hop) {
      throw Error(ErrorCode::kParseError, a.ref + ":" + std::to_string(i + 1) +
                                              ": reference needs relation and hop");
    }
    samples.push_back({preds[i].text, refs[i].text, *refs[i].relation, *refs[i].hop});
  }
  PolarityLexicon lex = LoadLexicon(a.lexicon);
  MetricReport report = EvaluateCorpus(samples, lex);
  std::cout << report.ToText();
  if (!a.out.empty()) {
    fs::create_directories(a.out);
    io::WriteText(fs::path(a.out) / "report.txt", report.ToText());
    io::WriteText(fs::path(a.out) / "report.json", report.ToJson());
    RunManifest m;
    m.command = "evaluate";
    m.inputs = {{"pred", a.pred}, {"ref", a.ref}};
    m.config.emplace_back("lexicon_hash", lex.Fingerprint());
    m.config.emplace_back("averaging", "sentence-level micro-average");
    m.Write(a.out);
  }
  return 0;
}

// ------------------------------------------------------------ augment-qa

struct AugmentArgs {
  std::string qa, out;
  TrainerConfig trainer;
  BackendFlags backend;
};

int RunAugment(const AugmentArgs &a) {
  a.trainer.Validate();
  a.backend.sampling.Validate();
  std::vector<QASample> samples = io::ReadQASamples(a.qa);
  std::unique_ptr<Generator> gen = a.backend.Make();
  std::vector<AugmentedQASample> augmented =
      AugmentAll(samples, *gen, a.backend.sampling);
  for (const AugmentedQASample &s : augmented) {
    for (const std::string &w : s.warnings) std::cerr << "warning: " << w << "\n";
  }
  TrainingFiles files = EmitTrainingFiles(augmented, a.trainer, a.out);

  RunManifest m;
  m.command = "augment-qa";
  m.inputs = {{"qa", a.qa}};
  m.config.emplace_back("alpha", Num(a.trainer.alpha));
  m.config.emplace_back("beta", Num(a.trainer.beta));
  a.backend.Echo(m);
  m.Write(a.out);
  std::cerr << "augmented " << augmented.size() << " questions -> "
            << files.records.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- score-qa

int RunScore(const std::string &pred, const std::string &gold,
             const std::string &out) {
  AccuracyReport report =
      ScorePredictions(io::ReadPredictions(pred), io::ReadQASamples(gold));
  std::cout << report.ToText();
  if (!out.empty()) {
    fs::create_directories(out);
    io::WriteText(fs::path(out) / "accuracy.json", report.ToJson());
    RunManifest m;
    m.command = "score-qa";
    m.inputs = {{"pred", pred}, {"gold", gold}};
    m.Write(out);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"eigenkit: event influence generation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  DeriveArgs derive;
  auto *derive_cmd = app.add_subcommand("derive", "Derive a generation corpus from influence graphs");
  derive_cmd->add_option("--graphs", derive.graphs, "Influence graphs (JSONL)")->required();
  derive_cmd->add_option("--passages", derive.passages, "Passages with split tags (JSONL)")->required();
  derive_cmd->add_option("--out", derive.out, "Output directory")->required();
  derive_cmd->add_option("--max-hop", derive.max_hop, "Longest path length")->check(CLI::PositiveNumber);
  derive.ablation.Register(derive_cmd, true);

  std::string stats_bundle, stats_out;
  auto *stats_cmd = app.add_subcommand("stats", "Sample counts by split, relation and hop");
  stats_cmd->add_option("--bundle", stats_bundle, "dataset.jsonl")->required();
  stats_cmd->add_option("--out", stats_out, "Output directory");

  RenderArgs render;
  auto *render_cmd = app.add_subcommand("render", "Render query strings");
  render_cmd->add_option("--bundle", render.bundle, "dataset.jsonl to render");
  render_cmd->add_option("--passages", render.passages, "Passages (JSONL)");
  render_cmd->add_option("--out", render.out, "Output directory");
  render_cmd->add_option("--source", render.source, "Source event (single query)");
  render_cmd->add_option("--relation", render.relation, "Relation (single query)");
  render_cmd->add_option("--hop", render.hop, "Hop (single query)");
  render_cmd->add_option("--passage-text", render.passage_text, "Passage (single query)");
  render.ablation.Register(render_cmd, false);

  BuildArgs build;
  auto *build_cmd = app.add_subcommand("build-graph", "Generate an influence graph for a seed event");
  build_cmd->add_option("--passages", build.passages, "Passages (JSONL)")->required();
  build_cmd->add_option("--passage-id", build.passage_id, "Passage to use (default: first)");
  build_cmd->add_option("--seed", build.seed, "Seed event")->required();
  build_cmd->add_option("--relations", build.relations, "Comma-separated relations");
  build_cmd->add_option("--hops", build.hops, "Comma-separated hops");
  build_cmd->add_flag("--no-dedup", build.no_dedup, "Keep textually equal generations apart");
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build.backend.Register(build_cmd);

  EvaluateArgs evaluate;
  auto *eval_cmd = app.add_subcommand("evaluate", "Score generations against references");
  eval_cmd->add_option("--pred", evaluate.pred, "Generated texts (JSONL)")->required();
  eval_cmd->add_option("--ref", evaluate.ref, "References with relation and hop (JSONL)")->required();
  eval_cmd->add_option("--lexicon", evaluate.lexicon, "Polarity lexicon JSON");
  eval_cmd->add_option("--out", evaluate.out, "Output directory");

  AugmentArgs augment;
  auto *augment_cmd = app.add_subcommand("augment-qa", "Build augmented QA training files");
  augment_cmd->add_option("--qa", augment.qa, "QA samples (JSONL)")->required();
  augment_cmd->add_option("--out", augment.out, "Output directory")->required();
  augment_cmd->add_option("--alpha", augment.trainer.alpha, "Primary loss weight");
  augment_cmd->add_option("--beta", augment.trainer.beta, "Augmented loss weight");
  augment.backend.Register(augment_cmd);

  std::string score_pred, score_gold, score_out;
  auto *score_cmd = app.add_subcommand("score-qa", "Accuracy of QA predictions");
  score_cmd->add_option("--pred", score_pred, "Predictions (JSONL)")->required();
  score_cmd->add_option("--gold", score_gold, "Gold QA samples (JSONL)")->required();
  score_cmd->add_option("--out", score_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*derive_cmd) return RunDerive(derive);
    if (*stats_cmd) return RunStats(stats_bundle, stats_out);
    if (*render_cmd) return RunRender(render);
    if (*build_cmd) return RunBuildGraph(build);
    if (*eval_cmd) return RunEvaluate(evaluate);
    if (*augment_cmd) return RunAugment(augment);
    if (*score_cmd) return RunScore(score_pred, score_gold, score_out);
  } catch (const Error &e) {
    std::cerr << "error [" << ErrorCodeName(e.code()) << "]: " << e.what() << "\n";
    return e.is_backend_error() ? kExitBackend : kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
