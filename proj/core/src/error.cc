// Copyright 2026 The gossipcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gossipcalc/error.h"

namespace gossipcalc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter:
      return "invalid-parameter";
    case ErrorCode::kParseError:
      return "parse-error";
    case ErrorCode::kDisconnected:
      return "disconnected-graph";
    case ErrorCode::kSelfLoop:
      return "self-loop";
    case ErrorCode::kDuplicateEdge:
      return "duplicate-edge";
    case ErrorCode::kGenerationFailure:
      return "generation-failure";
    case ErrorCode::kSizeLimit:
      return "size-limit";
    case ErrorCode::kNumericalFailure:
      return "numerical-failure";
    case ErrorCode::kInvalidState:
      return "invalid-state";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kInsufficientRecords:
      return "insufficient-records";
    case ErrorCode::kAllTrialsFailed:
      return "all-trials-failed";
    case ErrorCode::kIoError:
      return "io-error";
  }
  return "unknown";
}

}  // namespace gossipcalc
