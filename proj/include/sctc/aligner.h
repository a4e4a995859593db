// include/sctc/aligner.h

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

#ifndef SCTC_ALIGNER_H_
#define SCTC_ALIGNER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sctc/inventory.h"

namespace sctc {

enum class EditOp { kMatch, kSubstitute, kInsert, kDelete };

struct AlignedPair {
  EditOp op;
  std::optional<std::string> ref;  // absent for insertions
  std::optional<std::string> hyp;  // absent for deletions

  bool operator==(const AlignedPair &) const = default;
};

struct Alignment {
  std::vector<AlignedPair> ops;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t matches = 0;

  std::size_t Distance() const {
    return substitutions + deletions + insertions;
  }
};

// Unit-cost Levenshtein alignment. The backtrace prefers match/substitute
// over delete over insert, so equal-cost alignments are reproducible.
// Throws kAlphabetMismatch if the alphabets differ.
Alignment Align(const TokenSequence &ref, const TokenSequence &hyp);

// Alignment over raw token lists, no alphabet check.
Alignment Align(const std::vector<std::string> &ref,
                const std::vector<std::string> &hyp);

}  // namespace sctc

#endif  // SCTC_ALIGNER_H_
