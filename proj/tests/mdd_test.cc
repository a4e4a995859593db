// tests/mdd_test.cc

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

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "sctc/error.h"

namespace sctc {
namespace {

const AttributeTable &Table() { return AttributeTable::Default(); }

TokenSequence P(const std::string &text) {
  return ParsePhonemeSequence(Table(), text);
}

TokenSequence A(const std::string &attr, const std::vector<std::string> &tokens) {
  return {AttributeAlphabet(attr), tokens};
}

AnnotatedUtterance U(const std::string &canonical, const std::string &annotated,
                     const std::string &recognized) {
  return {P(canonical), P(annotated), P(recognized)};
}

TokenSequence RandomPhonemes(std::mt19937_64 &rng, std::size_t min_len,
                             std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, 5);
  static const std::vector<std::string> few = {"s", "z", "r", "ah", "t", "d"};
  TokenSequence p{std::string(kPhonemeAlphabet), {}};
  for (std::size_t n = len(rng); n > 0; --n) p.tokens.push_back(few[pick(rng)]);
  return p;
}

// Random edits: substitutions, deletions and insertions drawn at `rate`.
TokenSequence Perturb(std::mt19937_64 &rng, const TokenSequence &p, double rate) {
  static const std::vector<std::string> few = {"s", "z", "r", "ah", "t", "d"};
  std::bernoulli_distribution edit(rate);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> pick(0, few.size() - 1);
  TokenSequence out{p.alphabet_id, {}};
  for (const auto &token : p.tokens) {
    if (!edit(rng)) {
      out.tokens.push_back(token);
      continue;
    }
    switch (kind(rng)) {
      case 0: out.tokens.push_back(few[pick(rng)]); break;
      case 1: break;
      case 2:
        out.tokens.push_back(token);
        out.tokens.push_back(few[pick(rng)]);
        break;
    }
  }
  return out;
}

TEST(ClassifyPositions, CorrectDiagnosis) {
  const auto r = ClassifyPositions(U("th ih s", "s ih s", "s ih s"));
  EXPECT_EQ(r.counts.true_accept, 2u);
  EXPECT_EQ(r.counts.true_reject(), 1u);
  EXPECT_EQ(r.counts.correct_diagnosis, 1u);
  EXPECT_EQ(r.counts.diagnosis_error, 0u);
  EXPECT_EQ(r.positions[0].decision, Decision::kCorrectDiagnosis);
}

TEST(ClassifyPositions, FalseAcceptance) {
  const auto r = ClassifyPositions(U("th ih s", "s ih s", "th ih s"));
  EXPECT_EQ(r.counts.true_accept, 2u);
  EXPECT_EQ(r.counts.false_accept, 1u);
  EXPECT_EQ(r.counts.total(), 3u);
}

TEST(ClassifyPositions, FalseRejectionAndDiagnosisError) {
  const auto fr = ClassifyPositions(U("th ih s", "th ih s", "th iy s"));
  EXPECT_EQ(fr.counts.false_reject, 1u);
  EXPECT_EQ(fr.counts.true_accept, 2u);
  const auto de = ClassifyPositions(U("th ih s", "s ih s", "f ih s"));
  EXPECT_EQ(de.counts.diagnosis_error, 1u);
}

TEST(ClassifyPositions, PerfectSpeakerPerfectSystem) {
  const auto r = ClassifyPositions(U("dh eh r", "dh eh r", "dh eh r"));
  EXPECT_EQ(r.counts.true_accept, 3u);
  EXPECT_EQ(r.counts.total(), 3u);
}

TEST(ClassifyPositions, Deletions) {
  // System deleted a correctly spoken phoneme: FR.
  EXPECT_EQ(ClassifyPositions(U("dh eh r", "dh eh r", "dh r")).counts.false_reject, 1u);
  // Speaker and system both dropped it: CD.
  EXPECT_EQ(ClassifyPositions(U("dh eh r", "dh r", "dh r")).counts.correct_diagnosis, 1u);
  // Speaker dropped it, system output something else: DE.
  EXPECT_EQ(ClassifyPositions(U("dh eh r", "dh r", "dh ih r")).counts.diagnosis_error, 1u);
}

TEST(ClassifyPositions, InsertionsGoToTheSideChannel) {
  const auto r = ClassifyPositions(U("dh eh", "dh eh r", "dh eh r t"));
  EXPECT_EQ(r.counts.true_accept, 2u);
  EXPECT_EQ(r.counts.total(), 2u);
  EXPECT_EQ(r.insertions.annotated, 1u);
  EXPECT_EQ(r.insertions.recognized, 2u);
}

TEST(ClassifyPositions, Errors) {
  try {
    ClassifyPositions(U("", "s", "s"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCanonical);
  }
  AnnotatedUtterance mixed = U("s", "s", "s");
  mixed.recognized = A("voiced", {"-voiced"});
  try {
    ClassifyPositions(mixed);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kAlphabetMismatch);
  }
}

TEST(ComputeRates, PublishedRows) {
  struct Row {
    std::size_t fa, fr, ta, cd, de;
    double frr, far, der;
  };
  const Row rows[] = {
      {2686, 2261, 23920, 1077, 497, 8.64, 63.05, 31.58},
      {345, 256, 1884, 191, 66, 11.96, 57.31, 25.68},
      {1649, 4808, 21300, 1896, 715, 18.42, 38.71, 27.38},
      {209, 455, 1649, 264, 129, 21.63, 34.72, 32.82},
      {1683, 1899, 24079, 2170, 407, 7.31, 39.51, 15.79},
      {155, 268, 1829, 370, 77, 12.78, 25.75, 17.23},
  };
  for (const Row &row : rows) {
    MddCounts c;
    c.false_accept = row.fa;
    c.false_reject = row.fr;
    c.true_accept = row.ta;
    c.correct_diagnosis = row.cd;
    c.diagnosis_error = row.de;
    const MddRates r = ComputeRates(c);
    EXPECT_NEAR(*r.false_rejection, row.frr, 0.01);
    EXPECT_NEAR(*r.false_acceptance, row.far, 0.01);
    EXPECT_NEAR(*r.diagnostic_error, row.der, 0.01);
  }
}

TEST(ComputeRates, DegenerateDenominators) {
  MddCounts c;
  c.true_accept = 10;
  const MddRates r = ComputeRates(c);
  EXPECT_EQ(r.false_rejection, 0.0);
  EXPECT_FALSE(r.false_acceptance);
  EXPECT_FALSE(r.diagnostic_error);
  const MddRates none = ComputeRates(MddCounts{});
  EXPECT_FALSE(none.false_rejection);
}

TEST(AttributeLevelMdd, SToZIsAVoicingErrorOnly) {
  const AnnotatedUtterance u = U("s", "z", "z");
  for (const auto &attr : Table().attribute_order()) {
    const auto r = AttributeLevelMdd(Table(), u, attr.name);
    if (attr.name == "voiced") {
      EXPECT_EQ(r.counts.true_reject(), 1u);
      EXPECT_EQ(r.counts.correct_diagnosis, 1u);
    } else {
      EXPECT_EQ(r.counts.true_accept, 1u) << attr.name;
    }
  }
}

TEST(AttributeLevelMdd, ExplicitRecognisedSequences) {
  const AnnotatedUtterance u = U("s", "z", "s");
  const auto voiced = AttributeLevelMdd(Table(), u, "voiced", A("voiced", {"+voiced"}));
  EXPECT_EQ(voiced.counts.correct_diagnosis, 1u);
  const auto alveolar =
      AttributeLevelMdd(Table(), u, "alveolar", A("alveolar", {"+alveolar"}));
  EXPECT_EQ(alveolar.counts.true_accept, 1u);
  EXPECT_THROW(AttributeLevelMdd(Table(), u, "voiced", A("alveolar", {"+alveolar"})),
               Error);
}

TEST(AttributeLevelMdd, RToAhFlipsLiquid) {
  const auto canonical = PhonemesToAttributeSequence(Table(), "liquid", P("r"));
  const auto annotated = PhonemesToAttributeSequence(Table(), "liquid", P("ah"));
  EXPECT_EQ(canonical.tokens, std::vector<std::string>{"+liquid"});
  EXPECT_EQ(annotated.tokens, std::vector<std::string>{"-liquid"});
  const auto r = AttributeLevelMdd(Table(), U("r", "ah", "ah"), "liquid");
  EXPECT_EQ(r.counts.correct_diagnosis, 1u);
}

TEST(AttributeLevelMdd, PerfectSystemIsAllTrueAccept) {
  const AnnotatedUtterance u = U("dh eh r w ah z", "dh eh r w ah z", "dh eh r w ah z");
  for (const auto &attr : Table().attribute_order()) {
    const auto r = AttributeLevelMdd(Table(), u, attr.name);
    EXPECT_EQ(r.counts.true_accept, 6u);
    EXPECT_EQ(r.counts.total(), 6u);
  }
}

TEST(AttributeLevelMdd, DeletionPropagates) {
  const auto r = AttributeLevelMdd(Table(), U("dh eh r", "dh r", "dh r"), "vowel");
  EXPECT_EQ(r.counts.correct_diagnosis, 1u);
  EXPECT_EQ(r.counts.true_accept, 2u);
}

TEST(MddProperty, CountConservation) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    AnnotatedUtterance u;
    u.canonical = RandomPhonemes(rng, 1, 10);
    u.annotated = Perturb(rng, u.canonical, 0.3);
    u.recognized = Perturb(rng, u.annotated, 0.3);
    const auto r = ClassifyPositions(u);
    EXPECT_EQ(r.counts.total(), u.canonical.size());
    EXPECT_EQ(r.positions.size(), u.canonical.size());
    for (const auto &attr : {"voiced", "vowel", "liquid", "stop"}) {
      const auto a = AttributeLevelMdd(Table(), u, attr);
      EXPECT_EQ(a.counts.total(), u.canonical.size());
    }
  }
}

TEST(MddProperty, CorrectSpeakerMeansNoRejects) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    AnnotatedUtterance u;
    u.canonical = RandomPhonemes(rng, 1, 10);
    u.annotated = u.canonical;
    u.recognized = Perturb(rng, u.canonical, 0.4);
    const auto r = ClassifyPositions(u);
    EXPECT_EQ(r.counts.false_accept, 0u);
    EXPECT_EQ(r.counts.true_reject(), 0u);
  }
}

TEST(MddProperty, SharedBitMeansNoAttributeMispronunciation) {
  std::mt19937_64 rng(53);
  const auto &phonemes = Table().phonemes();
  std::uniform_int_distribution<std::size_t> pick(0, phonemes.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string a = phonemes[pick(rng)], b = phonemes[pick(rng)];
    for (const auto &attr : Table().attribute_order()) {
      const std::size_t i = Table().AttributeIndex(attr.name);
      if (Table().Signature(a)[i] != Table().Signature(b)[i]) continue;
      const auto r = AttributeLevelMdd(Table(), U(a, b, b), attr.name);
      EXPECT_EQ(r.counts.false_accept + r.counts.true_reject(), 0u)
          << a << "->" << b << " " << attr.name;
    }
  }
}

TEST(AttributeErrorRate, Examples) {
  EXPECT_DOUBLE_EQ(AttributeErrorRate(A("v", {"+v", "-v"}), A("v", {"+v", "-v"})), 0.0);
  EXPECT_NEAR(AttributeErrorRate(A("v", {"+v", "+v", "-v"}), A("v", {"+v", "-v"})),
              33.33, 0.01);
  EXPECT_DOUBLE_EQ(
      AttributeErrorRate(A("v", {"+v", "-v", "+v", "-v"}), A("v", {})), 100.0);
  EXPECT_NEAR(AttributeAccuracy(A("v", {"+v", "+v", "-v"}), A("v", {"+v", "-v"})),
              66.67, 0.01);
  try {
    AttributeErrorRate(A("v", {}), A("v", {"+v"}));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyReference);
  }
}

TEST(AttributePrf, Examples) {
  const auto same = AttributePrf(A("v", {"+v", "-v", "+v"}), A("v", {"+v", "-v", "+v"}));
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);

  const auto half = AttributePrf(A("v", {"+v", "+v"}), A("v", {"+v", "-v"}));
  EXPECT_EQ(half.true_positive, 1u);
  EXPECT_EQ(half.false_negative, 1u);
  EXPECT_EQ(half.false_positive, 0u);
  EXPECT_DOUBLE_EQ(*half.recall, 0.5);
  EXPECT_DOUBLE_EQ(*half.precision, 1.0);
  EXPECT_NEAR(*half.f1, 2.0 / 3.0, 1e-12);

  const auto silent = AttributePrf(A("v", {"+v", "-v"}), A("v", {"-v", "-v"}));
  EXPECT_DOUBLE_EQ(*silent.recall, 0.0);
  EXPECT_FALSE(silent.precision);
  EXPECT_FALSE(silent.f1);
}

TEST(AttributePrf, InsertionsAndDeletions) {
  const auto r = AttributePrf(A("v", {"+v", "-v", "+v"}), A("v", {"-v", "+v", "+v", "+v"}));
  EXPECT_EQ(r.true_positive + r.false_negative, 2u);
  EXPECT_EQ(r.true_positive + r.false_positive, 3u);
  EXPECT_THROW(AttributePrf(P("s"), P("s")), Error);
}

TEST(AttributePrf, AccumulatesCounts) {
  PrfResult total;
  total += AttributePrf(A("v", {"+v"}), A("v", {"+v"}));
  total += AttributePrf(A("v", {"+v"}), A("v", {"-v"}));
  EXPECT_EQ(total.true_positive, 1u);
  EXPECT_EQ(total.false_negative, 1u);
  EXPECT_DOUBLE_EQ(*total.recall, 0.5);
}

TEST(DiagnosisReport, ThereWasAChange) {
  const AnnotatedUtterance u = U("dh eh r w ah z ah ch ey n jh",
                                 "dh eh ah w ah s ah ch ey n ch",
                                 "dh eh ah w ah s ah ch ey n ch");
  const auto recognized = PhonemesToAllAttributeSequences(Table(), u.recognized);
  const auto entries = DiagnosisReport(Table(), u, recognized);
  ASSERT_EQ(entries.size(), 3u);

  EXPECT_EQ(entries[0].canonical, "r");
  std::vector<std::string> r_attrs;
  for (const auto &f : entries[0].findings) r_attrs.push_back(f.attribute);
  EXPECT_NE(std::find(r_attrs.begin(), r_attrs.end(), "vowel"), r_attrs.end());
  EXPECT_NE(std::find(r_attrs.begin(), r_attrs.end(), "liquid"), r_attrs.end());
  EXPECT_EQ(r_attrs.size(), SignatureDiff(Table(), "r", "ah").size());

  for (std::size_t k : {1u, 2u}) {
    ASSERT_EQ(entries[k].findings.size(), 1u);
    EXPECT_EQ(entries[k].findings[0].attribute, "voiced");
    EXPECT_EQ(entries[k].findings[0].expected, "+voiced");
    EXPECT_EQ(entries[k].findings[0].detected, "-voiced");
  }
  EXPECT_EQ(entries[1].canonical, "z");
  EXPECT_EQ(entries[2].canonical, "jh");

  const std::string text = RenderDiagnosisReport(entries);
  EXPECT_NE(text.find("/z/ (annotated /s/)"), std::string::npos) << text;
  EXPECT_NE(text.find("voiced: expected +voiced, detected -voiced"), std::string::npos);
}

TEST(DiagnosisReport, PerfectProductionIsEmpty) {
  const AnnotatedUtterance u = U("dh eh r", "dh eh r", "dh eh r");
  const auto entries =
      DiagnosisReport(Table(), u, PhonemesToAllAttributeSequences(Table(), u.recognized));
  EXPECT_TRUE(entries.empty());
  EXPECT_EQ(RenderDiagnosisReport(entries), "");
}

TEST(DiagnosisReport, NeedsAllAttributes) {
  const AnnotatedUtterance u = U("s", "z", "z");
  EXPECT_THROW(DiagnosisReport(Table(), u, {}), Error);
}

}  // namespace
}  // namespace sctc
