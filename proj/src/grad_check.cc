// src/grad_check.cc

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

#include "sctc/grad_check.h"

#include <algorithm>
#include <cmath>

namespace sctc {

double RelativeError(double analytic, double numeric) {
  const double scale =
      std::max({std::abs(analytic), std::abs(numeric), kGradCheckFloor});
  return std::abs(analytic - numeric) / scale;
}

GradCheckReport CheckGradient(const std::function<double(const Matrix &)> &loss,
                              const Matrix &logits, const Matrix &analytic,
                              double step) {
  GradCheckReport report;
  Matrix probe = logits;
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    for (std::size_t k = 0; k < logits.cols(); ++k) {
      const double original = probe(t, k);
      probe(t, k) = original + step;
      const double up = loss(probe);
      probe(t, k) = original - step;
      const double down = loss(probe);
      probe(t, k) = original;
      const double numeric = (up - down) / (2.0 * step);
      const double error = RelativeError(analytic(t, k), numeric);
      if (error > report.max_relative_error || (t == 0 && k == 0)) {
        report = {error, t, k, analytic(t, k), numeric};
      }
    }
  }
  return report;
}

GradCheckReport CheckSctcGradient(const Matrix &logits,
                                  const CategoryLayout &layout,
                                  const MultiLabelTarget &target, double step) {
  const SctcResult result = SctcSbLoss(logits, layout, target);
  return CheckGradient(
      [&](const Matrix &m) {
        return SctcSbLoss(m, layout, target).total_neg_log_likelihood;
      },
      logits, result.grad, step);
}

}  // namespace sctc
