// src/mdd.cc

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

#include "sctc/mdd.h"

#include <sstream>
#include <string>

#include "sctc/error.h"

namespace sctc {

MddCounts &MddCounts::operator+=(const MddCounts &other) {
  true_accept += other.true_accept;
  false_reject += other.false_reject;
  false_accept += other.false_accept;
  correct_diagnosis += other.correct_diagnosis;
  diagnosis_error += other.diagnosis_error;
  return *this;
}

InsertionTally &InsertionTally::operator+=(const InsertionTally &other) {
  annotated += other.annotated;
  recognized += other.recognized;
  return *this;
}

namespace {

std::optional<double> Percent(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) return std::nullopt;
  return 100.0 * static_cast<double>(numerator) /
         static_cast<double>(denominator);
}

// For each canonical position, the token the other side aligned to it
// (nullopt on deletion), plus how many tokens were inserted.
struct Projection {
  std::vector<std::optional<std::string>> tokens;
  std::vector<bool> matched;
  std::size_t insertions = 0;
};

Projection ProjectOntoReference(const Alignment &alignment) {
  Projection out;
  for (const auto &pair : alignment.ops) {
    if (pair.op == EditOp::kInsert) {
      ++out.insertions;
      continue;
    }
    out.tokens.push_back(pair.hyp);
    out.matched.push_back(pair.op == EditOp::kMatch);
  }
  return out;
}

void CheckSameAlphabet(const AnnotatedUtterance &u) {
  if (u.canonical.alphabet_id != u.annotated.alphabet_id ||
      u.canonical.alphabet_id != u.recognized.alphabet_id)
    throw Error(ErrorCode::kAlphabetMismatch,
                "utterance mixes alphabets " + u.canonical.alphabet_id + ", " +
                    u.annotated.alphabet_id + ", " + u.recognized.alphabet_id);
}

// Rewrites a phoneme alignment in terms of one attribute's tokens. Edit
// types are recomputed: a phoneme substitution that keeps the attribute bit
// becomes a match.
Alignment ProjectAlignmentOntoAttribute(const AttributeTable &table,
                                        const Alignment &phoneme_alignment,
                                        std::string_view attribute) {
  const std::size_t index = table.AttributeIndex(attribute);
  const std::string plus = PlusToken(attribute);
  const std::string minus = MinusToken(attribute);
  auto map = [&](const std::optional<std::string> &phoneme)
      -> std::optional<std::string> {
    if (!phoneme) return std::nullopt;
    return table.Signature(*phoneme)[index] ? plus : minus;
  };
  Alignment out;
  for (const auto &pair : phoneme_alignment.ops) {
    AlignedPair mapped{pair.op, map(pair.ref), map(pair.hyp)};
    if (mapped.ref && mapped.hyp) {
      mapped.op = *mapped.ref == *mapped.hyp ? EditOp::kMatch
                                             : EditOp::kSubstitute;
    }
    switch (mapped.op) {
      case EditOp::kMatch: ++out.matches; break;
      case EditOp::kSubstitute: ++out.substitutions; break;
      case EditOp::kInsert: ++out.insertions; break;
      case EditOp::kDelete: ++out.deletions; break;
    }
    out.ops.push_back(std::move(mapped));
  }
  return out;
}

}  // namespace

MddRates ComputeRates(const MddCounts &c) {
  MddRates rates;
  rates.false_acceptance = Percent(c.false_accept, c.false_accept + c.true_reject());
  rates.false_rejection = Percent(c.false_reject, c.false_reject + c.true_accept);
  rates.diagnostic_error = Percent(c.diagnosis_error, c.true_reject());
  return rates;
}

std::string_view DecisionName(Decision decision) {
  switch (decision) {
    case Decision::kTrueAccept: return "TA";
    case Decision::kFalseReject: return "FR";
    case Decision::kFalseAccept: return "FA";
    case Decision::kCorrectDiagnosis: return "CD";
    case Decision::kDiagnosisError: return "DE";
  }
  return "?";
}

MddClassification ClassifyPositions(const Alignment &truth,
                                    const TokenSequence &canonical,
                                    const TokenSequence &recognized) {
  if (canonical.empty())
    throw Error(ErrorCode::kEmptyCanonical, "canonical sequence is empty");
  if (canonical.alphabet_id != recognized.alphabet_id)
    throw Error(ErrorCode::kAlphabetMismatch,
                "canonical is " + canonical.alphabet_id + ", recognized is " +
                    recognized.alphabet_id);
  const Projection annotated = ProjectOntoReference(truth);
  const Projection system = ProjectOntoReference(Align(canonical, recognized));
  if (annotated.tokens.size() != canonical.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "ground-truth alignment covers " +
                    std::to_string(annotated.tokens.size()) +
                    " canonical positions, expected " +
                    std::to_string(canonical.size()));

  MddClassification out;
  out.insertions.annotated = annotated.insertions;
  out.insertions.recognized = system.insertions;
  for (std::size_t j = 0; j < canonical.size(); ++j) {
    const bool pronounced_correctly = annotated.matched[j];
    const bool accepted = system.matched[j];
    Decision decision;
    if (pronounced_correctly) {
      decision = accepted ? Decision::kTrueAccept : Decision::kFalseReject;
    } else if (accepted) {
      decision = Decision::kFalseAccept;
    } else {
      // Both-deleted counts as a correct diagnosis.
      decision = system.tokens[j] == annotated.tokens[j]
                     ? Decision::kCorrectDiagnosis
                     : Decision::kDiagnosisError;
    }
    switch (decision) {
      case Decision::kTrueAccept: ++out.counts.true_accept; break;
      case Decision::kFalseReject: ++out.counts.false_reject; break;
      case Decision::kFalseAccept: ++out.counts.false_accept; break;
      case Decision::kCorrectDiagnosis: ++out.counts.correct_diagnosis; break;
      case Decision::kDiagnosisError: ++out.counts.diagnosis_error; break;
    }
    out.positions.push_back({j, canonical.tokens[j], annotated.tokens[j],
                             system.tokens[j], decision});
  }
  return out;
}

MddClassification ClassifyPositions(const AnnotatedUtterance &utterance) {
  CheckSameAlphabet(utterance);
  if (utterance.canonical.empty())
    throw Error(ErrorCode::kEmptyCanonical, "canonical sequence is empty");
  return ClassifyPositions(Align(utterance.canonical, utterance.annotated),
                           utterance.canonical, utterance.recognized);
}

MddClassification AttributeLevelMdd(const AttributeTable &table,
                                    const AnnotatedUtterance &phoneme_level,
                                    std::string_view attribute,
                                    const TokenSequence &recognized) {
  CheckSameAlphabet(phoneme_level);
  if (phoneme_level.canonical.alphabet_id != kPhonemeAlphabet)
    throw Error(ErrorCode::kAlphabetMismatch,
                "attribute-level MDD needs a phoneme-level utterance");
  if (phoneme_level.canonical.empty())
    throw Error(ErrorCode::kEmptyCanonical, "canonical sequence is empty");
  const Alignment truth = ProjectAlignmentOntoAttribute(
      table, Align(phoneme_level.canonical, phoneme_level.annotated), attribute);
  const TokenSequence canonical =
      PhonemesToAttributeSequence(table, attribute, phoneme_level.canonical);
  ValidateTokenSequence(recognized);
  return ClassifyPositions(truth, canonical, recognized);
}

MddClassification AttributeLevelMdd(const AttributeTable &table,
                                    const AnnotatedUtterance &phoneme_level,
                                    std::string_view attribute) {
  return AttributeLevelMdd(
      table, phoneme_level, attribute,
      PhonemesToAttributeSequence(table, attribute, phoneme_level.recognized));
}

double AttributeErrorRate(const TokenSequence &ref, const TokenSequence &hyp) {
  if (ref.empty())
    throw Error(ErrorCode::kEmptyReference, "reference sequence is empty");
  const Alignment alignment = Align(ref, hyp);
  return 100.0 * static_cast<double>(alignment.Distance()) /
         static_cast<double>(ref.size());
}

double AttributeAccuracy(const TokenSequence &ref, const TokenSequence &hyp) {
  return 100.0 - AttributeErrorRate(ref, hyp);
}

void FinalizePrf(PrfResult &r) {
  r.precision.reset();
  r.recall.reset();
  r.f1.reset();
  if (r.true_positive + r.false_positive > 0)
    r.precision = static_cast<double>(r.true_positive) /
                  static_cast<double>(r.true_positive + r.false_positive);
  if (r.true_positive + r.false_negative > 0)
    r.recall = static_cast<double>(r.true_positive) /
               static_cast<double>(r.true_positive + r.false_negative);
  if (r.precision && r.recall) {
    const double sum = *r.precision + *r.recall;
    r.f1 = sum > 0.0 ? 2.0 * *r.precision * *r.recall / sum : 0.0;
  }
}

PrfResult &PrfResult::operator+=(const PrfResult &other) {
  true_positive += other.true_positive;
  false_positive += other.false_positive;
  false_negative += other.false_negative;
  FinalizePrf(*this);
  return *this;
}

PrfResult AttributePrf(const TokenSequence &ref, const TokenSequence &hyp) {
  auto attribute = AttributeOfAlphabet(ref.alphabet_id);
  if (!attribute)
    throw Error(ErrorCode::kAlphabetMismatch,
                "precision/recall needs an attribute alphabet, got " +
                    ref.alphabet_id);
  ValidateTokenSequence(ref);
  ValidateTokenSequence(hyp);
  const std::string plus = PlusToken(*attribute);
  auto positive = [&](const std::optional<std::string> &token) {
    return token && *token == plus;
  };
  PrfResult out;
  for (const auto &pair : Align(ref, hyp).ops) {
    const bool ref_positive = positive(pair.ref);
    const bool hyp_positive = positive(pair.hyp);
    if (ref_positive && hyp_positive) {
      ++out.true_positive;
    } else if (hyp_positive) {
      ++out.false_positive;
    } else if (ref_positive) {
      ++out.false_negative;
    }
  }
  FinalizePrf(out);
  return out;
}

std::vector<DiagnosisEntry> DiagnosisReport(
    const AttributeTable &table, const AnnotatedUtterance &phoneme_level,
    const std::vector<TokenSequence> &recognized_attributes) {
  const auto &attributes = table.attribute_order();
  if (recognized_attributes.size() != attributes.size())
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(recognized_attributes.size()) +
                    " recognized attribute sequences, expected " +
                    std::to_string(attributes.size()));

  std::vector<DiagnosisEntry> entries(phoneme_level.canonical.size());
  for (std::size_t a = 0; a < attributes.size(); ++a) {
    const auto result = AttributeLevelMdd(table, phoneme_level,
                                          attributes[a].name,
                                          recognized_attributes[a]);
    for (const auto &position : result.positions) {
      const bool rejected = position.decision != Decision::kTrueAccept &&
                            position.decision != Decision::kFalseAccept;
      if (!rejected) continue;
      entries[position.position].findings.push_back(
          {attributes[a].name, position.canonical, position.recognized});
    }
  }

  // Annotated phoneme per canonical position, for context in the report.
  const Projection annotated =
      ProjectOntoReference(Align(phoneme_level.canonical, phoneme_level.annotated));
  std::vector<DiagnosisEntry> out;
  for (std::size_t j = 0; j < entries.size(); ++j) {
    if (entries[j].findings.empty()) continue;
    entries[j].position = j;
    entries[j].canonical = phoneme_level.canonical.tokens[j];
    entries[j].annotated = annotated.tokens[j];
    out.push_back(std::move(entries[j]));
  }
  return out;
}

std::string RenderDiagnosisReport(const std::vector<DiagnosisEntry> &entries) {
  std::ostringstream os;
  for (const auto &entry : entries) {
    os << "position " << entry.position << " /" << entry.canonical << "/";
    if (entry.annotated) {
      if (*entry.annotated != entry.canonical)
        os << " (annotated /" << *entry.annotated << "/)";
    } else {
      os << " (annotated: deleted)";
    }
    os << '\n';
    for (const auto &finding : entry.findings) {
      os << "  " << finding.attribute << ": expected " << finding.expected
         << ", detected " << finding.detected.value_or("nothing") << '\n';
    }
  }
  return os.str();
}

}  // namespace sctc
