// include/sctc/ctc.h

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

#ifndef SCTC_CTC_H_
#define SCTC_CTC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sctc/matrix.h"

namespace sctc {

// Labels are column indices into a T x K matrix whose last column (K - 1) is
// the blank. Targets never contain the blank.
using LabelSequence = std::vector<int>;

struct CtcResult {
  double neg_log_likelihood = 0.0;
  // d(-log p(l|x)) / d(raw logits), same shape as the logits.
  Matrix grad;
};

// Merge adjacent repeats, then drop blanks.
LabelSequence Collapse(std::span<const int> path, int blank);

// Minimum number of frames any path for `target` needs: one per label plus
// one separating blank between each pair of equal neighbours.
std::size_t MinimumFrames(std::span<const int> target);

// Loss and gradient for log-probabilities that are a row-wise log-softmax of
// some raw logits. The returned gradient is with respect to those raw logits:
// exp(log_probs) minus the normalised state occupancy of each label.
CtcResult CtcFromLogProbs(const Matrix &log_probs, std::span<const int> target);

// Standard CTC on raw logits, blank = last column. Throws kInfeasibleTarget
// when the target cannot fit in T frames, kNonFiniteLogit on NaN/inf input,
// kBadDimension for empty matrices or out-of-range labels.
CtcResult CtcLoss(const Matrix &logits, std::span<const int> target);

inline constexpr std::uint64_t kBruteForceMaxPaths = 10'000'000;

// Exhaustive oracle: enumerates every path of length T over the K columns,
// keeps those whose collapse equals `target`, and returns -log of their
// summed probability (+inf when no path survives). Probabilities are computed
// in linear space from an independent softmax. Throws kTooLarge when
// K^T exceeds kBruteForceMaxPaths.
double BruteForceCtc(const Matrix &logits, std::span<const int> target);

}  // namespace sctc

#endif  // SCTC_CTC_H_
