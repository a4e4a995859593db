// src/aligner.cc

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

#include "sctc/aligner.h"

#include <algorithm>

#include "sctc/error.h"

namespace sctc {

Alignment Align(const std::vector<std::string> &ref,
                const std::vector<std::string> &hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // cost[i][j]: distance between ref[0, i) and hyp[0, j).
  std::vector<std::vector<std::size_t>> cost(n + 1,
                                             std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) cost[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diagonal = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cost[i][j] = std::min({diagonal, cost[i - 1][j] + 1, cost[i][j - 1] + 1});
    }
  }

  Alignment out;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (cost[i][j] == cost[i - 1][j - 1] + (same ? 0 : 1)) {
        out.ops.push_back({same ? EditOp::kMatch : EditOp::kSubstitute,
                           ref[i - 1], hyp[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      out.ops.push_back({EditOp::kDelete, ref[i - 1], std::nullopt});
      --i;
    } else {
      out.ops.push_back({EditOp::kInsert, std::nullopt, hyp[j - 1]});
      --j;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  for (const auto &pair : out.ops) {
    switch (pair.op) {
      case EditOp::kMatch: ++out.matches; break;
      case EditOp::kSubstitute: ++out.substitutions; break;
      case EditOp::kInsert: ++out.insertions; break;
      case EditOp::kDelete: ++out.deletions; break;
    }
  }
  return out;
}

Alignment Align(const TokenSequence &ref, const TokenSequence &hyp) {
  if (ref.alphabet_id != hyp.alphabet_id)
    throw Error(ErrorCode::kAlphabetMismatch,
                "cannot align " + ref.alphabet_id + " against " +
                    hyp.alphabet_id);
  return Align(ref.tokens, hyp.tokens);
}

}  // namespace sctc
