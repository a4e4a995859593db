// src/ctc.cc

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

#include "sctc/ctc.h"

#include <cmath>
#include <limits>
#include <string>

#include "sctc/error.h"

namespace sctc {

LabelSequence Collapse(std::span<const int> path, int blank) {
  LabelSequence out;
  int previous = blank;
  for (int label : path) {
    if (label != blank && label != previous) out.push_back(label);
    previous = label;
  }
  return out;
}

std::size_t MinimumFrames(std::span<const int> target) {
  std::size_t frames = target.size();
  for (std::size_t u = 1; u < target.size(); ++u) {
    if (target[u] == target[u - 1]) ++frames;
  }
  return frames;
}

namespace {

void CheckTarget(std::size_t num_frames, std::size_t num_columns,
                 std::span<const int> target) {
  if (num_frames == 0 || num_columns < 2)
    throw Error(ErrorCode::kBadDimension,
                "logits must have at least one frame and two columns, got " +
                    std::to_string(num_frames) + "x" +
                    std::to_string(num_columns));
  const int blank = static_cast<int>(num_columns) - 1;
  for (std::size_t u = 0; u < target.size(); ++u) {
    if (target[u] < 0 || target[u] >= blank)
      throw Error(ErrorCode::kBadDimension,
                  "target label " + std::to_string(target[u]) + " at position " +
                      std::to_string(u) + " outside [0, " +
                      std::to_string(blank) + ")");
  }
  const std::size_t needed = MinimumFrames(target);
  if (needed > num_frames)
    throw Error(ErrorCode::kInfeasibleTarget,
                "target of length " + std::to_string(target.size()) + " needs " +
                    std::to_string(needed) + " frames, only " +
                    std::to_string(num_frames) + " available");
}

}  // namespace

CtcResult CtcFromLogProbs(const Matrix &log_probs,
                          std::span<const int> target) {
  const std::size_t T = log_probs.rows();
  const std::size_t K = log_probs.cols();
  CheckTarget(T, K, target);
  const int blank = static_cast<int>(K) - 1;

  // Blank-interleaved lattice: even states are blanks, odd state 2u+1 is
  // target[u].
  const std::size_t S = 2 * target.size() + 1;
  std::vector<int> state_label(S, blank);
  for (std::size_t u = 0; u < target.size(); ++u)
    state_label[2 * u + 1] = target[u];
  auto can_skip = [&](std::size_t s) {
    return s >= 2 && state_label[s] != blank &&
           state_label[s] != state_label[s - 2];
  };

  Matrix alpha(T, S, kLogZero);
  alpha(0, 0) = log_probs(0, blank);
  if (S > 1) alpha(0, 1) = log_probs(0, state_label[1]);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double acc = alpha(t - 1, s);
      if (s >= 1) acc = LogAdd(acc, alpha(t - 1, s - 1));
      if (can_skip(s)) acc = LogAdd(acc, alpha(t - 1, s - 2));
      if (acc != kLogZero) alpha(t, s) = acc + log_probs(t, state_label[s]);
    }
  }

  // beta(t, s): log probability of finishing from state s at t, excluding
  // the emission at t.
  Matrix beta(T, S, kLogZero);
  beta(T - 1, S - 1) = 0.0;
  if (S > 1) beta(T - 1, S - 2) = 0.0;
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      double acc = beta(t + 1, s) + log_probs(t + 1, state_label[s]);
      if (s + 1 < S)
        acc = LogAdd(acc, beta(t + 1, s + 1) +
                              log_probs(t + 1, state_label[s + 1]));
      if (s + 2 < S && can_skip(s + 2))
        acc = LogAdd(acc, beta(t + 1, s + 2) +
                              log_probs(t + 1, state_label[s + 2]));
      beta(t, s) = acc;
    }
  }

  double log_likelihood = alpha(T - 1, S - 1);
  if (S > 1) log_likelihood = LogAdd(log_likelihood, alpha(T - 1, S - 2));
  if (log_likelihood == kLogZero)
    throw Error(ErrorCode::kInfeasibleTarget,
                "target has zero probability under the given distribution");

  CtcResult result;
  result.neg_log_likelihood = -log_likelihood;
  result.grad = Matrix(T, K);
  std::vector<double> occupancy(K);
  for (std::size_t t = 0; t < T; ++t) {
    std::fill(occupancy.begin(), occupancy.end(), kLogZero);
    for (std::size_t s = 0; s < S; ++s) {
      double& slot = occupancy[state_label[s]];
      slot = LogAdd(slot, alpha(t, s) + beta(t, s));
    }
    for (std::size_t k = 0; k < K; ++k) {
      result.grad(t, k) = std::exp(log_probs(t, k)) -
                          std::exp(occupancy[k] - log_likelihood);
    }
  }
  return result;
}

CtcResult CtcLoss(const Matrix &logits, std::span<const int> target) {
  CheckTarget(logits.rows(), logits.cols(), target);
  return CtcFromLogProbs(LogSoftmaxRows(logits), target);
}

double BruteForceCtc(const Matrix &logits, std::span<const int> target) {
  const std::size_t T = logits.rows();
  const std::size_t K = logits.cols();
  if (T == 0 || K < 2)
    throw Error(ErrorCode::kBadDimension, "brute force needs T >= 1, K >= 2");
  std::uint64_t num_paths = 1;
  for (std::size_t t = 0; t < T; ++t) {
    num_paths *= K;
    if (num_paths > kBruteForceMaxPaths)
      throw Error(ErrorCode::kTooLarge,
                  std::to_string(K) + "^" + std::to_string(T) +
                      " paths exceed the enumeration limit");
  }

  // Linear-space softmax, deliberately not shared with the log-space path.
  Matrix probs(T, K);
  for (std::size_t t = 0; t < T; ++t) {
    double max_logit = logits(t, 0);
    for (std::size_t k = 1; k < K; ++k) max_logit = std::max(max_logit, logits(t, k));
    double z = 0.0;
    for (std::size_t k = 0; k < K; ++k) z += std::exp(logits(t, k) - max_logit);
    for (std::size_t k = 0; k < K; ++k)
      probs(t, k) = std::exp(logits(t, k) - max_logit) / z;
  }

  const int blank = static_cast<int>(K) - 1;
  const LabelSequence wanted(target.begin(), target.end());
  std::vector<int> path(T, 0);
  double total = 0.0;
  for (std::uint64_t index = 0; index < num_paths; ++index) {
    std::uint64_t rest = index;
    double p = 1.0;
    for (std::size_t t = 0; t < T; ++t) {
      path[t] = static_cast<int>(rest % K);
      rest /= K;
      p *= probs(t, path[t]);
    }
    if (Collapse(path, blank) == wanted) total += p;
  }
  if (total <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(total);
}

}  // namespace sctc
