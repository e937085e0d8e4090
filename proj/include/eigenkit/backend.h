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

#ifndef EIGENKIT_BACKEND_H_
#define EIGENKIT_BACKEND_H_

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eigenkit {

// End-of-text symbol of the served causal language model.
inline constexpr std::string_view kDefaultStopToken = "<|endoftext|>";

struct GenerationRequest {
  std::string prompt;
  int max_new_tokens = 48;
  double top_p = 0.9;
  double temperature = 1.0;
  std::string stop_token = std::string(kDefaultStopToken);

  // Throws Error(kBadRequest) unless 0 < top_p <= 1, max_new_tokens >= 1
  // and temperature >= 0.
  void Validate() const;
};

enum class FinishReason { kStop, kLength, kError };

std::string_view FinishReasonName(FinishReason reason);
std::optional<FinishReason> ParseFinishReason(std::string_view name);

struct GenerationResult {
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
};

// Conditional text generation capability. Implementations must be safe to
// call from several threads at once; max_in_flight() is the number of
// concurrent Generate calls they are prepared to serve.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual GenerationResult Generate(const GenerationRequest &request) = 0;
  virtual std::size_t max_in_flight() const = 0;
};

// Validates the request, calls the generator and strips any stop-token
// occurrence (and everything after it) from the returned text.
GenerationResult Generate(Generator &generator,
                          const GenerationRequest &request);

// Deterministic scripted generator for tests and offline pipelines.
class MockGenerator : public Generator {
 public:
  enum class Policy { kStrict, kFallback };

  // Throws Error(kDuplicatePrompt) if a prompt is scripted twice.
  static std::unique_ptr<MockGenerator> FromScript(
      const std::vector<std::pair<std::string, std::string>> &entries,
      Policy policy = Policy::kStrict, std::string fallback = "");

  // Unscripted prompts raise Error(kBadRequest) under kStrict and return
  // the fallback text under kFallback.
  GenerationResult Generate(const GenerationRequest &request) override;
  std::size_t max_in_flight() const override { return max_in_flight_; }
  void set_max_in_flight(std::size_t n) { max_in_flight_ = n == 0 ? 1 : n; }

  // Prompts in the order the calls arrived.
  std::vector<std::string> calls() const;
  std::size_t call_count() const;

 private:
  MockGenerator(std::map<std::string, std::string, std::less<>> script,
                Policy policy, std::string fallback);

  const std::map<std::string, std::string, std::less<>> script_;
  const Policy policy_;
  const std::string fallback_;
  std::size_t max_in_flight_ = 4;

  mutable std::mutex mu_;
  std::vector<std::string> calls_;
};

struct RemoteOptions {
  // e.g. "http://localhost:8000"; a path component is used as a prefix.
  std::string base_url;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::milliseconds connect_timeout{2000};
  std::chrono::milliseconds read_timeout{120000};
  std::size_t max_in_flight = 4;
};

struct HealthStatus {
  std::string status;
  std::string model;
};

// Client for the model service:
//   POST /generate  {prompt, max_new_tokens, top_p, temperature, stop_token}
//                -> {text, finish_reason}
//   GET  /health   -> {status, model}
// Transport failures and 5xx responses are retried with exponential backoff
// (identical payload each attempt) and end in Error(kBackendUnavailable);
// 4xx responses raise Error(kBadRequest) without retrying.
class RemoteGenerator : public Generator {
 public:
  explicit RemoteGenerator(RemoteOptions options);

  GenerationResult Generate(const GenerationRequest &request) override;
  std::size_t max_in_flight() const override { return options_.max_in_flight; }

  HealthStatus Health();

  const RemoteOptions &options() const { return options_; }

 private:
  RemoteOptions options_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::counting_semaphore<1024> slots_;
};

// JSON body the client sends for a request.
std::string EncodeGenerationRequest(const GenerationRequest &request);
GenerationRequest DecodeGenerationRequest(std::string_view body);
std::string EncodeGenerationResult(const GenerationResult &result);
// Throws Error(kParseError) on a body that does not follow the protocol.
GenerationResult DecodeGenerationResult(std::string_view body);

}  // namespace eigenkit

#endif  // EIGENKIT_BACKEND_H_
