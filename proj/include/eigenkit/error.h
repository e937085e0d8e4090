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

#ifndef EIGENKIT_ERROR_H_
#define EIGENKIT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenkit {

enum class ErrorCode {
  kUnknownNode,
  kInvalidGraph,
  kPassageMismatch,
  kInvalidArgument,
  kEmptySource,
  kMalformedQuery,
  kBackendUnavailable,
  kBadRequest,
  kDuplicatePrompt,
  kEmptyInput,
  kEmptyCandidate,
  kEmptyReferences,
  kMissingPrediction,
  kIoFailure,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All toolkit failures are reported as Error; the code identifies the
// contract violation, the message carries context for diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // True for failures originating in the generation backend.
  bool is_backend_error() const {
    return code_ == ErrorCode::kBackendUnavailable ||
           code_ == ErrorCode::kBadRequest;
  }

 private:
  ErrorCode code_;
};

}  // namespace eigenkit

#endif  // EIGENKIT_ERROR_H_
