/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "common/error.h"

namespace metamorph {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kMissingAnnotation: return "MissingAnnotation";
    case ErrorCode::kBBoxOutOfBounds: return "BBoxOutOfBounds";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kNoValidPlacement: return "NoValidPlacement";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSingularSupport: return "SingularSupport";
    case ErrorCode::kEmptyScoreSet: return "EmptyScoreSet";
    case ErrorCode::kTooFewRows: return "TooFewRows";
    case ErrorCode::kEmptyImage: return "EmptyImage";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kUnknownParentMR: return "UnknownParentMR";
    case ErrorCode::kDuplicateMR: return "DuplicateMR";
    case ErrorCode::kNonZeroExit: return "NonZeroExit";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kNoOutputImages: return "NoOutputImages";
    case ErrorCode::kEmptyImageList: return "EmptyImageList";
    case ErrorCode::kSampleTooLarge: return "SampleTooLarge";
    case ErrorCode::kSessionClosed: return "SessionClosed";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kUnknownScale: return "UnknownScale";
    case ErrorCode::kUnknownImage: return "UnknownImage";
    case ErrorCode::kUnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace metamorph
