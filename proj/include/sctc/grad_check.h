// include/sctc/grad_check.h

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

#ifndef SCTC_GRAD_CHECK_H_
#define SCTC_GRAD_CHECK_H_

#include <cstddef>
#include <functional>

#include "sctc/matrix.h"
#include "sctc/sctc_sb.h"

namespace sctc {

// Entries whose magnitudes are both below this are compared absolutely; the
// loss is a sum over up to 35 categories, so rounding in the central
// difference sits around 1e-8 and a pure ratio would be meaningless near 0.
inline constexpr double kGradCheckFloor = 1e-3;

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::size_t worst_row = 0;
  std::size_t worst_col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
};

// |a - n| / max(|a|, |n|, kGradCheckFloor)
double RelativeError(double analytic, double numeric);

// Compares `analytic` against central differences of `loss` at `logits`,
// perturbing every entry by +/- step.
GradCheckReport CheckGradient(const std::function<double(const Matrix &)> &loss,
                              const Matrix &logits, const Matrix &analytic,
                              double step = 1e-5);

GradCheckReport CheckSctcGradient(const Matrix &logits,
                                  const CategoryLayout &layout,
                                  const MultiLabelTarget &target,
                                  double step = 1e-5);

}  // namespace sctc

#endif  // SCTC_GRAD_CHECK_H_
