// src/decoder.cc

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

#include "sctc/decoder.h"

#include <array>
#include <algorithm>
#include <string>

#include "sctc/ctc.h"
#include "sctc/error.h"

namespace sctc {

TokenSequence GreedyDecodeCategory(const Matrix &logits,
                                   const CategoryLayout &layout,
                                   std::size_t category) {
  layout.Validate();
  if (logits.cols() != layout.width)
    throw Error(ErrorCode::kLayoutMismatch,
                "logits have " + std::to_string(logits.cols()) +
                    " columns, layout expects " + std::to_string(layout.width));
  if (category >= layout.size())
    throw Error(ErrorCode::kLayoutMismatch,
                "category " + std::to_string(category) + " out of range");
  CheckFinite(logits);

  const auto &c = layout.categories[category];
  // Candidates in ascending column order so the first maximum wins ties.
  std::array<std::pair<std::size_t, int>, 3> candidates = {{
      {c.plus_index, kPlusLabel},
      {c.minus_index, kMinusLabel},
      {layout.blank_index, kCategoryBlank},
  }};
  std::sort(candidates.begin(), candidates.end());

  LabelSequence path(logits.rows());
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    auto best = candidates[0];
    for (std::size_t j = 1; j < candidates.size(); ++j) {
      if (logits(t, candidates[j].first) > logits(t, best.first))
        best = candidates[j];
    }
    path[t] = best.second;
  }

  TokenSequence out{AttributeAlphabet(c.name), {}};
  const std::string plus = PlusToken(c.name);
  const std::string minus = MinusToken(c.name);
  for (int label : Collapse(path, kCategoryBlank))
    out.tokens.push_back(label == kPlusLabel ? plus : minus);
  return out;
}

std::vector<TokenSequence> DecodeAll(const Matrix &logits,
                                     const CategoryLayout &layout) {
  std::vector<TokenSequence> out;
  out.reserve(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i)
    out.push_back(GreedyDecodeCategory(logits, layout, i));
  return out;
}

TokenSequence GreedyDecodePhoneme(const Matrix &logits,
                                  const std::vector<std::string> &phonemes) {
  if (logits.cols() != phonemes.size() + 1)
    throw Error(ErrorCode::kBadDimension,
                "phoneme logits need " + std::to_string(phonemes.size() + 1) +
                    " columns, got " + std::to_string(logits.cols()));
  CheckFinite(logits);
  const int blank = static_cast<int>(phonemes.size());
  LabelSequence path(logits.rows());
  for (std::size_t t = 0; t < logits.rows(); ++t) {
    auto row = logits.Row(t);
    path[t] = static_cast<int>(std::max_element(row.begin(), row.end()) -
                               row.begin());
  }
  TokenSequence out{std::string(kPhonemeAlphabet), {}};
  for (int label : Collapse(path, blank)) out.tokens.push_back(phonemes[label]);
  return out;
}

TokenSequence GreedyDecodePhoneme(const Matrix &logits,
                                  const AttributeTable &table) {
  return GreedyDecodePhoneme(logits, table.phonemes());
}

}  // namespace sctc
