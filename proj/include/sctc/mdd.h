// include/sctc/mdd.h

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

#ifndef SCTC_MDD_H_
#define SCTC_MDD_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sctc/aligner.h"
#include "sctc/inventory.h"

namespace sctc {

// canonical: the prompt's reference pronunciation; annotated: what a human
// labeller heard; recognized: the system output. One alphabet for all three.
struct AnnotatedUtterance {
  TokenSequence canonical;
  TokenSequence annotated;
  TokenSequence recognized;
};

struct MddCounts {
  std::size_t true_accept = 0;
  std::size_t false_reject = 0;
  std::size_t false_accept = 0;
  std::size_t correct_diagnosis = 0;
  std::size_t diagnosis_error = 0;

  std::size_t true_reject() const { return correct_diagnosis + diagnosis_error; }
  std::size_t total() const {
    return true_accept + false_reject + false_accept + true_reject();
  }
  MddCounts &operator+=(const MddCounts &other);
  bool operator==(const MddCounts &) const = default;
};

// Percentages; nullopt where the denominator is zero.
struct MddRates {
  std::optional<double> false_acceptance;  // FA / (FA + TR)
  std::optional<double> false_rejection;   // FR / (FR + TA)
  std::optional<double> diagnostic_error;  // DE / (CD + DE)
};

MddRates ComputeRates(const MddCounts &counts);

enum class Decision {
  kTrueAccept,
  kFalseReject,
  kFalseAccept,
  kCorrectDiagnosis,
  kDiagnosisError,
};

std::string_view DecisionName(Decision decision);

struct PositionDecision {
  std::size_t position;
  std::string canonical;
  std::optional<std::string> annotated;   // nullopt: deleted by the speaker
  std::optional<std::string> recognized;  // nullopt: deleted by the system
  Decision decision;
};

// Tokens that align to no canonical position. They are reported here and
// never enter the TA/FR/FA/TR counts.
struct InsertionTally {
  std::size_t annotated = 0;
  std::size_t recognized = 0;

  InsertionTally &operator+=(const InsertionTally &other);
  bool operator==(const InsertionTally &) const = default;
};

struct MddClassification {
  MddCounts counts;
  InsertionTally insertions;
  std::vector<PositionDecision> positions;
};

// Joins canonical<->annotated (ground truth) and canonical<->recognized
// (system decision) on canonical positions. Throws kEmptyCanonical and
// kAlphabetMismatch.
MddClassification ClassifyPositions(const AnnotatedUtterance &utterance);

// As above with the ground-truth alignment supplied by the caller.
// `truth` must have the canonical sequence on its reference side.
MddClassification ClassifyPositions(const Alignment &truth,
                                    const TokenSequence &canonical,
                                    const TokenSequence &recognized);

// Attribute-level MDD for one attribute. The canonical<->annotated phoneme
// alignment is projected onto attribute tokens, so phoneme insertions and
// deletions stay insertions and deletions; `recognized` must be over the
// attribute's alphabet.
MddClassification AttributeLevelMdd(const AttributeTable &table,
                                    const AnnotatedUtterance &phoneme_level,
                                    std::string_view attribute,
                                    const TokenSequence &recognized);

// Same, with the recognized attribute sequence derived by mapping the
// phoneme-level recognized sequence.
MddClassification AttributeLevelMdd(const AttributeTable &table,
                                    const AnnotatedUtterance &phoneme_level,
                                    std::string_view attribute);

// 100 * (S + D + I) / |ref|. Throws kEmptyReference.
double AttributeErrorRate(const TokenSequence &ref, const TokenSequence &hyp);
// 100 - AttributeErrorRate.
double AttributeAccuracy(const TokenSequence &ref, const TokenSequence &hyp);

struct PrfResult {
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;

  PrfResult &operator+=(const PrfResult &other);  // adds counts, recomputes
};

// Precision/recall over +att tokens, counted on the Levenshtein alignment:
// an inserted +att is a false positive and a deleted +att a false negative.
PrfResult AttributePrf(const TokenSequence &ref, const TokenSequence &hyp);

// Recompute the ratios from the three counts.
void FinalizePrf(PrfResult &result);

struct AttributeFinding {
  std::string attribute;
  std::string expected;
  std::optional<std::string> detected;  // nullopt: no token recognized
};

struct DiagnosisEntry {
  std::size_t position;
  std::string canonical;
  std::optional<std::string> annotated;
  std::vector<AttributeFinding> findings;
};

// Every canonical position where some attribute's recognized token differs
// from the canonical attribute token, with the differing attributes listed
// in canonical order. recognized_attributes[i] is attribute i's decoded
// sequence.
std::vector<DiagnosisEntry> DiagnosisReport(
    const AttributeTable &table, const AnnotatedUtterance &phoneme_level,
    const std::vector<TokenSequence> &recognized_attributes);

std::string RenderDiagnosisReport(const std::vector<DiagnosisEntry> &entries);

}  // namespace sctc

#endif  // SCTC_MDD_H_
