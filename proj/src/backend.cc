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

#include "eigenkit/backend.h"

#include "json.hpp"

#include "eigenkit/error.h"

namespace eigenkit {

using nlohmann::json;

void GenerationRequest::Validate() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw Error(ErrorCode::kBadRequest,
                "top_p must be in (0, 1], got " + std::to_string(top_p));
  }
  if (max_new_tokens < 1) {
    throw Error(ErrorCode::kBadRequest, "max_new_tokens must be >= 1");
  }
  if (!(temperature >= 0.0)) {
    throw Error(ErrorCode::kBadRequest, "temperature must be >= 0");
  }
}

std::string_view FinishReasonName(FinishReason reason) {
  switch (reason) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

std::optional<FinishReason> ParseFinishReason(std::string_view name) {
  if (name == "stop") return FinishReason::kStop;
  if (name == "length") return FinishReason::kLength;
  if (name == "error") return FinishReason::kError;
  return std::nullopt;
}

GenerationResult Generate(Generator &generator,
                          const GenerationRequest &request) {
  request.Validate();
  GenerationResult result = generator.Generate(request);
  if (!request.stop_token.empty()) {
    std::size_t pos = result.text.find(request.stop_token);
    if (pos != std::string::npos) {
      result.text.erase(pos);
      result.finish_reason = FinishReason::kStop;
    }
  }
  return result;
}

std::unique_ptr<MockGenerator> MockGenerator::FromScript(
    const std::vector<std::pair<std::string, std::string>> &entries,
    Policy policy, std::string fallback) {
  std::map<std::string, std::string, std::less<>> script;
  for (const auto &[prompt, response] : entries) {
    if (!script.emplace(prompt, response).second) {
      throw Error(ErrorCode::kDuplicatePrompt,
                  "prompt scripted twice: " + prompt);
    }
  }
  return std::unique_ptr<MockGenerator>(
      new MockGenerator(std::move(script), policy, std::move(fallback)));
}

MockGenerator::MockGenerator(
    std::map<std::string, std::string, std::less<>> script, Policy policy,
    std::string fallback)
    : script_(std::move(script)), policy_(policy), fallback_(std::move(fallback)) {}

GenerationResult MockGenerator::Generate(const GenerationRequest &request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    calls_.push_back(request.prompt);
  }
  auto it = script_.find(request.prompt);
  if (it != script_.end()) return {it->second, FinishReason::kStop};
  if (policy_ == Policy::kFallback) return {fallback_, FinishReason::kStop};
  throw Error(ErrorCode::kBadRequest,
              "mock has no scripted response for prompt: " + request.prompt);
}

std::vector<std::string> MockGenerator::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

std::size_t MockGenerator::call_count() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_.size();
}

std::string EncodeGenerationRequest(const GenerationRequest &request) {
  json body = {{"prompt", request.prompt},
               {"max_new_tokens", request.max_new_tokens},
               {"top_p", request.top_p},
               {"temperature", request.temperature},
               {"stop_token", request.stop_token}};
  return body.dump();
}

GenerationRequest DecodeGenerationRequest(std::string_view body) {
  try {
    json j = json::parse(body);
    GenerationRequest request;
    request.prompt = j.at("prompt").get<std::string>();
    if (j.contains("max_new_tokens")) {
      request.max_new_tokens = j["max_new_tokens"].get<int>();
    }
    if (j.contains("top_p")) request.top_p = j["top_p"].get<double>();
    if (j.contains("temperature")) {
      request.temperature = j["temperature"].get<double>();
    }
    if (j.contains("stop_token")) {
      request.stop_token = j["stop_token"].get<std::string>();
    }
    return request;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("bad generation request: ") + e.what());
  }
}

std::string EncodeGenerationResult(const GenerationResult &result) {
  json body = {{"text", result.text},
               {"finish_reason", FinishReasonName(result.finish_reason)}};
  return body.dump();
}

GenerationResult DecodeGenerationResult(std::string_view body) {
  try {
    json j = json::parse(body);
    GenerationResult result;
    result.text = j.at("text").get<std::string>();
    auto reason = ParseFinishReason(j.at("finish_reason").get<std::string>());
    if (!reason) {
      throw Error(ErrorCode::kParseError,
                  "unknown finish_reason in response: " + std::string(body));
    }
    result.finish_reason = *reason;
    return result;
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("bad generation response: ") + e.what());
  }
}

}  // namespace eigenkit
