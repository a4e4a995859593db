// src/error.cc

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

#include "sctc/error.h"

namespace sctc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingPhoneme: return "MissingPhoneme";
    case ErrorCode::kDuplicateSignature: return "DuplicateSignature";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kBadDimension: return "BadDimension";
    case ErrorCode::kUnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::kInfeasibleTarget: return "InfeasibleTarget";
    case ErrorCode::kNonFiniteLogit: return "NonFiniteLogit";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
    case ErrorCode::kDuplicateAttribute: return "DuplicateAttribute";
    case ErrorCode::kAlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::kEmptyCanonical: return "EmptyCanonical";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kDivergedLoss: return "DivergedLoss";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInconsistentSignature: return "InconsistentSignature";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace sctc
