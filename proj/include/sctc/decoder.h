// include/sctc/decoder.h

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

#ifndef SCTC_DECODER_H_
#define SCTC_DECODER_H_

#include <cstddef>
#include <string>
#include <vector>

#include "sctc/inventory.h"
#include "sctc/matrix.h"
#include "sctc/sctc_sb.h"

namespace sctc {

// Best-path decoding: frame-wise argmax over {+att_i, -att_i, blank}
// followed by collapse. Ties go to the lowest column index. Since softmax is
// monotone the argmax is taken on the raw logits directly.
TokenSequence GreedyDecodeCategory(const Matrix &logits,
                                   const CategoryLayout &layout,
                                   std::size_t category);

// GreedyDecodeCategory for every category, layout order.
std::vector<TokenSequence> DecodeAll(const Matrix &logits,
                                     const CategoryLayout &layout);

// Single-alphabet decoder for a T x (P + 1) phoneme posteriorgram where
// column p < P is phonemes[p] and column P is the blank.
TokenSequence GreedyDecodePhoneme(const Matrix &logits,
                                  const std::vector<std::string> &phonemes);

// Convenience overload using the table's phoneme order (T x 40).
TokenSequence GreedyDecodePhoneme(const Matrix &logits,
                                  const AttributeTable &table);

}  // namespace sctc

#endif  // SCTC_DECODER_H_
