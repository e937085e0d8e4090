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

#ifndef EIGENKIT_MANIFEST_H_
#define EIGENKIT_MANIFEST_H_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace eigenkit {

inline constexpr const char *kToolVersion = "0.1.0";

// Provenance record written next to the outputs of every CLI run. Apart from
// the timestamp, two runs with identical inputs and flags produce identical
// manifests.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // role -> path
  std::vector<std::pair<std::string, std::string>> config;  // key -> value
  std::string tool_version = kToolVersion;
  std::string timestamp;  // UTC, ISO 8601

  std::string ToJson() const;
  // Writes <dir>/manifest.json, stamping the current time when timestamp is
  // empty.
  std::filesystem::path Write(const std::filesystem::path &dir);
};

std::string UtcTimestamp();

}  // namespace eigenkit

#endif  // EIGENKIT_MANIFEST_H_
