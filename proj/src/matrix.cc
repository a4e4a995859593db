// src/matrix.cc

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

#include "sctc/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "sctc/error.h"

namespace sctc {

double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

double LogSumExp(std::span<const double> values) {
  double max_value = kLogZero;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == kLogZero) return kLogZero;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - max_value);
  return max_value + std::log(sum);
}

void CheckFinite(const Matrix &logits) {
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    for (std::size_t k = 0; k < logits.cols(); ++k) {
      if (!std::isfinite(logits(t, k))) {
        throw Error(ErrorCode::kNonFiniteLogit,
                    "logit at frame " + std::to_string(t) + ", column " +
                        std::to_string(k) + " is not finite");
      }
    }
  }
}

Matrix LogSoftmaxRows(const Matrix &logits) {
  CheckFinite(logits);
  Matrix out(logits.rows(), logits.cols());
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    double norm = LogSumExp(logits.Row(t));
    for (std::size_t k = 0; k < logits.cols(); ++k)
      out(t, k) = logits(t, k) - norm;
  }
  return out;
}

}  // namespace sctc
