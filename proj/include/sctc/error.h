// include/sctc/error.h

// Copyright 2026  The sctc-mdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SCTC_ERROR_H_
#define SCTC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sctc {

enum class ErrorCode {
  kMissingPhoneme,
  kDuplicateSignature,
  kUnknownAttribute,
  kBadDimension,
  kUnknownPhoneme,
  kInfeasibleTarget,
  kNonFiniteLogit,
  kTooLarge,
  kLayoutMismatch,
  kDuplicateAttribute,
  kAlphabetMismatch,
  kEmptyCanonical,
  kEmptyReference,
  kBadConfig,
  kDivergedLoss,
  kDimensionMismatch,
  kInconsistentSignature,
  kParse,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception; code() lets
// callers (and tests) dispatch on the failure kind without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sctc

#endif  // SCTC_ERROR_H_
