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

#ifndef METAMORPH_COMMON_ERROR_H_
#define METAMORPH_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace metamorph {

// Every failure the library reports maps to one of these kinds. The names are
// stable and surface through the C API and CLI diagnostics.
enum class ErrorCode {
  // dataset
  kMissingFile,
  kMalformedLine,
  kDanglingReference,
  kMissingAnnotation,
  kBBoxOutOfBounds,
  kUnsupportedFormat,
  // generic
  kIoFailure,
  kInvalidArgument,
  kInvalidConfig,
  // mutate
  kNoValidPlacement,
  kUnknownPreset,
  // metrics
  kDimensionMismatch,
  kSingularSupport,
  kEmptyScoreSet,
  kTooFewRows,
  kEmptyImage,
  kMalformedRow,
  kNotNormalized,
  // mrengine
  kUnknownParentMR,
  kDuplicateMR,
  // modelio
  kNonZeroExit,
  kTimeout,
  kNoOutputImages,
  // likert
  kEmptyImageList,
  kSampleTooLarge,
  kSessionClosed,
  kValueOutOfRange,
  kUnknownScale,
  kUnknownImage,
  kUnknownSession,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace metamorph

#endif  // METAMORPH_COMMON_ERROR_H_
