// src/sctc_sb.cc

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

#include "sctc/sctc_sb.h"

#include <string>
#include <unordered_set>

#include "sctc/error.h"

namespace sctc {

void CategoryLayout::Validate() const {
  const std::size_t n = categories.size();
  if (width != 2 * n + 1)
    throw Error(ErrorCode::kLayoutMismatch,
                "layout width " + std::to_string(width) + " != 2*" +
                    std::to_string(n) + "+1");
  std::vector<bool> used(width, false);
  auto claim = [&](std::size_t index, const std::string &what) {
    if (index >= width || used[index])
      throw Error(ErrorCode::kLayoutMismatch,
                  what + " index " + std::to_string(index) +
                      " is out of range or reused");
    used[index] = true;
  };
  for (const auto &category : categories) {
    claim(category.plus_index, "+" + category.name);
    claim(category.minus_index, "-" + category.name);
  }
  claim(blank_index, "blank");
}

CategoryLayout MakeLayout(const std::vector<std::string> &attribute_names) {
  std::unordered_set<std::string> seen;
  CategoryLayout layout;
  const std::size_t n = attribute_names.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(attribute_names[i]).second)
      throw Error(ErrorCode::kDuplicateAttribute,
                  "attribute '" + attribute_names[i] + "' listed twice");
    layout.categories.push_back({attribute_names[i], i, n + i});
  }
  layout.blank_index = 2 * n;
  layout.width = 2 * n + 1;
  return layout;
}

CategoryLayout MakeAttributeLayout() {
  std::vector<std::string> names;
  for (const auto &attribute : CanonicalAttributes())
    names.push_back(attribute.name);
  return MakeLayout(names);
}

MultiLabelTarget MakeMultiLabelTarget(const AttributeTable &table,
                                      const CategoryLayout &layout,
                                      const TokenSequence &phonemes) {
  std::vector<TokenSequence> sequences;
  sequences.reserve(layout.size());
  for (const auto &category : layout.categories)
    sequences.push_back(
        PhonemesToAttributeSequence(table, category.name, phonemes));
  return MakeMultiLabelTarget(layout, sequences);
}

MultiLabelTarget MakeMultiLabelTarget(
    const CategoryLayout &layout, const std::vector<TokenSequence> &sequences) {
  if (sequences.size() != layout.size())
    throw Error(ErrorCode::kLayoutMismatch,
                std::to_string(sequences.size()) + " target sequences for " +
                    std::to_string(layout.size()) + " categories");
  MultiLabelTarget target;
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const auto &name = layout.categories[i].name;
    const std::string plus = PlusToken(name);
    const std::string minus = MinusToken(name);
    LabelSequence labels;
    for (const auto &token : sequences[i].tokens) {
      if (token == plus) {
        labels.push_back(kPlusLabel);
      } else if (token == minus) {
        labels.push_back(kMinusLabel);
      } else {
        throw Error(ErrorCode::kAlphabetMismatch,
                    "token '" + token + "' does not belong to category '" +
                        name + "'");
      }
    }
    if (i > 0 && labels.size() != target.per_category[0].size())
      throw Error(ErrorCode::kLayoutMismatch,
                  "category '" + name + "' target length differs from the "
                  "first category's");
    target.per_category.push_back(std::move(labels));
  }
  return target;
}

Matrix CategoryLogits(const Matrix &logits, const CategoryLayout &layout,
                      std::size_t category) {
  const auto &c = layout.categories.at(category);
  Matrix out(logits.rows(), 3);
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    out(t, kPlusLabel) = logits(t, c.plus_index);
    out(t, kMinusLabel) = logits(t, c.minus_index);
    out(t, kCategoryBlank) = logits(t, layout.blank_index);
  }
  return out;
}

namespace {

void CheckShape(const Matrix &logits, const CategoryLayout &layout) {
  layout.Validate();
  if (logits.cols() != layout.width)
    throw Error(ErrorCode::kLayoutMismatch,
                "logits have " + std::to_string(logits.cols()) +
                    " columns, layout expects " + std::to_string(layout.width));
}

}  // namespace

std::vector<Matrix> GroupedSoftmax(const Matrix &logits,
                                   const CategoryLayout &layout) {
  CheckShape(logits, layout);
  CheckFinite(logits);
  std::vector<Matrix> views;
  views.reserve(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i)
    views.push_back(LogSoftmaxRows(CategoryLogits(logits, layout, i)));
  return views;
}

SctcResult SctcSbLoss(const Matrix &logits, const CategoryLayout &layout,
                      const MultiLabelTarget &target) {
  CheckShape(logits, layout);
  if (target.per_category.size() != layout.size())
    throw Error(ErrorCode::kLayoutMismatch,
                std::to_string(target.per_category.size()) +
                    " category targets for " + std::to_string(layout.size()) +
                    " categories");
  // Check every category before doing any work so a failure names the first
  // infeasible category and no partial sum escapes.
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (MinimumFrames(target.per_category[i]) > logits.rows())
      throw Error(ErrorCode::kInfeasibleTarget,
                  "category '" + layout.categories[i].name + "' needs " +
                      std::to_string(MinimumFrames(target.per_category[i])) +
                      " frames, only " + std::to_string(logits.rows()) +
                      " available");
  }

  const auto views = GroupedSoftmax(logits, layout);
  SctcResult result;
  result.grad = Matrix(logits.rows(), layout.width);
  result.per_category_nll.resize(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    CtcResult category = CtcFromLogProbs(views[i], target.per_category[i]);
    result.per_category_nll[i] = category.neg_log_likelihood;
    const auto &c = layout.categories[i];
    for (std::size_t t = 0; t < logits.rows(); ++t) {
      result.grad(t, c.plus_index) += category.grad(t, kPlusLabel);
      result.grad(t, c.minus_index) += category.grad(t, kMinusLabel);
      result.grad(t, layout.blank_index) += category.grad(t, kCategoryBlank);
    }
  }
  for (double nll : result.per_category_nll)
    result.total_neg_log_likelihood += nll;
  return result;
}

}  // namespace sctc
