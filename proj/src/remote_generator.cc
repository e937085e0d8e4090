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

#include <thread>

#include "eigenkit/backend.h"
#include "eigenkit/error.h"
#include "httplib.h"
#include "json.hpp"

namespace eigenkit {
namespace {

// Releases a semaphore slot on scope exit.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<1024> &slots) : slots_(slots) {
    slots_.acquire();
  }
  ~SlotGuard() { slots_.release(); }
  SlotGuard(const SlotGuard &) = delete;
  SlotGuard &operator=(const SlotGuard &) = delete;

 private:
  std::counting_semaphore<1024> &slots_;
};

std::ptrdiff_t ClampSlots(std::size_t n) {
  return static_cast<std::ptrdiff_t>(std::clamp<std::size_t>(n, 1, 1024));
}

}  // namespace

RemoteGenerator::RemoteGenerator(RemoteOptions options)
    : options_(std::move(options)), slots_(ClampSlots(options_.max_in_flight)) {
  options_.max_in_flight = static_cast<std::size_t>(ClampSlots(options_.max_in_flight));
  if (options_.max_attempts < 1) options_.max_attempts = 1;
  std::string_view url = options_.base_url;
  std::size_t scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string_view::npos ? 0 : scheme_end + 3;
  std::size_t path_start = url.find('/', host_start);
  if (path_start == std::string_view::npos) {
    scheme_host_port_ = std::string(url);
  } else {
    scheme_host_port_ = std::string(url.substr(0, path_start));
    path_prefix_ = std::string(url.substr(path_start));
    while (!path_prefix_.empty() && path_prefix_.back() == '/') {
      path_prefix_.pop_back();
    }
  }
  if (scheme_end == std::string_view::npos) {
    scheme_host_port_ = "http://" + scheme_host_port_;
  }
}

GenerationResult RemoteGenerator::Generate(const GenerationRequest &request) {
  request.Validate();
  const std::string payload = EncodeGenerationRequest(request);
  const std::string path = path_prefix_ + "/generate";

  SlotGuard slot(slots_);
  std::string last_failure;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(options_.connect_timeout);
    client.set_read_timeout(options_.read_timeout);
    httplib::Result res = client.Post(path, payload, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
    } else if (res->status >= 400 && res->status < 500) {
      throw Error(ErrorCode::kBadRequest,
                  "backend rejected request (HTTP " +
                      std::to_string(res->status) + "): " + res->body);
    } else if (res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
    } else {
      return DecodeGenerationResult(res->body);
    }
    if (attempt < options_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw Error(ErrorCode::kBackendUnavailable,
              "backend " + options_.base_url + " unavailable after " +
                  std::to_string(options_.max_attempts) +
                  " attempts (" + last_failure + ")");
}

HealthStatus RemoteGenerator::Health() {
  httplib::Client client(scheme_host_port_);
  client.set_connection_timeout(options_.connect_timeout);
  httplib::Result res = client.Get(path_prefix_ + "/health");
  if (!res) {
    throw Error(ErrorCode::kBackendUnavailable,
                "health check failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kBackendUnavailable,
                "health check returned HTTP " + std::to_string(res->status));
  }
  try {
    nlohmann::json j = nlohmann::json::parse(res->body);
    return {j.at("status").get<std::string>(), j.value("model", std::string())};
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParseError,
                std::string("bad health response: ") + e.what());
  }
}

}  // namespace eigenkit
