// include/sctc/sctc_sb.h

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

#ifndef SCTC_SCTC_SB_H_
#define SCTC_SCTC_SB_H_

#include <cstddef>
#include <string>
#include <vector>

#include "sctc/ctc.h"
#include "sctc/inventory.h"
#include "sctc/matrix.h"

namespace sctc {

// Column indices of one binary category inside the output layer.
struct Category {
  std::string name;
  std::size_t plus_index;
  std::size_t minus_index;
};

// Output layer of N binary categories sharing a single blank node. The
// default layout puts every +att first, then every -att, then the blank.
struct CategoryLayout {
  std::vector<Category> categories;
  std::size_t blank_index = 0;
  std::size_t width = 0;

  std::size_t size() const { return categories.size(); }

  // Throws kLayoutMismatch unless width == 2N + 1 and the 2N + 1 indices are
  // a permutation of [0, width).
  void Validate() const;
};

// [0, N) = +att, [N, 2N) = -att, 2N = shared blank. Throws
// kDuplicateAttribute on repeated names.
CategoryLayout MakeLayout(const std::vector<std::string> &attribute_names);

// Layout over all 35 attributes in canonical order: width 71, blank 70.
CategoryLayout MakeAttributeLayout();

// Label indices inside each category's three-column view.
inline constexpr int kPlusLabel = 0;
inline constexpr int kMinusLabel = 1;
inline constexpr int kCategoryBlank = 2;

// One label sequence per category, all of the same length, over
// {kPlusLabel, kMinusLabel}.
struct MultiLabelTarget {
  std::vector<LabelSequence> per_category;
};

// Per-category targets for a phoneme sequence. Categories are matched to
// attributes by name, so any layout over table attributes works.
MultiLabelTarget MakeMultiLabelTarget(const AttributeTable &table,
                                      const CategoryLayout &layout,
                                      const TokenSequence &phonemes);

// Same, from already-mapped "+att"/"-att" sequences (one per category, in
// layout order).
MultiLabelTarget MakeMultiLabelTarget(const CategoryLayout &layout,
                                      const std::vector<TokenSequence> &sequences);

// The three raw logits (plus, minus, shared blank) of category i, as a
// T x 3 matrix in that column order.
Matrix CategoryLogits(const Matrix &logits, const CategoryLayout &layout,
                      std::size_t category);

// Per-category log-softmax over {+att_i, -att_i, blank}. Every view reads the
// same blank logit, so the blank probability differs per category only
// through the renormalisation.
std::vector<Matrix> GroupedSoftmax(const Matrix &logits,
                                   const CategoryLayout &layout);

struct SctcResult {
  double total_neg_log_likelihood = 0.0;
  std::vector<double> per_category_nll;
  // Gradient w.r.t. the raw T x width logits. The blank column holds the sum
  // of every category's blank gradient.
  Matrix grad;
};

// Sum over categories of the CTC loss of each grouped view against its
// target; the product of category probabilities in negative-log form. Any
// infeasible category aborts the whole call with kInfeasibleTarget.
SctcResult SctcSbLoss(const Matrix &logits, const CategoryLayout &layout,
                      const MultiLabelTarget &target);

}  // namespace sctc

#endif  // SCTC_SCTC_SB_H_
