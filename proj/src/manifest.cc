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

#include "eigenkit/manifest.h"

#include <chrono>
#include <ctime>

#include "eigenkit/io.h"
#include "json.hpp"

namespace eigenkit {

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

std::string RunManifest::ToJson() const {
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto &[role, path] : inputs) in[role] = path;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto &[key, value] : config) cfg[key] = value;
  nlohmann::ordered_json j = {{"command", command},
                              {"inputs", std::move(in)},
                              {"config", std::move(cfg)},
                              {"tool_version", tool_version},
                              {"timestamp", timestamp}};
  return j.dump(2) + "\n";
}

std::filesystem::path RunManifest::Write(const std::filesystem::path &dir) {
  if (timestamp.empty()) timestamp = UtcTimestamp();
  const std::filesystem::path path = dir / "manifest.json";
  io::WriteText(path, ToJson());
  return path;
}

}  // namespace eigenkit
