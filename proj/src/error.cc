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

#include "eigenkit/error.h"

namespace eigenkit {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kInvalidGraph: return "InvalidGraph";
    case ErrorCode::kPassageMismatch: return "PassageMismatch";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptySource: return "EmptySource";
    case ErrorCode::kMalformedQuery: return "MalformedQuery";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kBadRequest: return "BadRequest";
    case ErrorCode::kDuplicatePrompt: return "DuplicatePrompt";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kEmptyCandidate: return "EmptyCandidate";
    case ErrorCode::kEmptyReferences: return "EmptyReferences";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace eigenkit
