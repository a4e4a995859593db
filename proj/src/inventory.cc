// src/inventory.cc

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

#include "sctc/inventory.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "sctc/error.h"

namespace sctc {

std::string_view DefaultAttributeTableSource();

namespace {

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      break;
    }
    cells.push_back(Trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return cells;
}

std::string SignatureString(const AttributeSignature &sig) {
  std::string out;
  for (std::size_t i = 0; i < kNumAttributes; ++i) out += sig[i] ? '1' : '0';
  return out;
}

// Facts about individual phonemes that any acceptable table must encode. The
// s/z rows pin that the two differ only in voicing among fricative, voiced
// and alveolar.
struct RequiredBit {
  const char *phoneme;
  const char *attribute;
  bool value;
};

constexpr RequiredBit kRequiredBits[] = {
    {"z", "fricative", true},  {"z", "voiced", true},
    {"z", "alveolar", true},   {"s", "fricative", true},
    {"s", "voiced", false},    {"s", "alveolar", true},
    {"jh", "voiced", true},    {"ch", "voiced", false},
    {"zh", "voiced", true},    {"sh", "voiced", false},
    {"r", "vowel", false},     {"r", "liquid", true},
    {"ah", "vowel", true},     {"ah", "liquid", false},
    {"l", "liquid", true},     {"l", "vowel", false},
    {"aw", "vowel", true},     {"ow", "vowel", true},
    {"aa", "vowel", true},     {"uw", "vowel", true},
    {"hh", "vowel", false},    {"d", "vowel", false},
    {"y", "vowel", false},     {"hh", "liquid", false},
    {"aw", "liquid", false},   {"ow", "liquid", false},
    {"d", "liquid", false},    {"aa", "liquid", false},
    {"y", "liquid", false},    {"uw", "liquid", false},
};

}  // namespace

std::string_view AttributeGroupName(AttributeGroup group) {
  switch (group) {
    case AttributeGroup::kManner: return "manner";
    case AttributeGroup::kPlace: return "place";
    case AttributeGroup::kOther: return "other";
  }
  return "unknown";
}

const std::vector<Attribute> &CanonicalAttributes() {
  static const std::vector<Attribute> attributes = [] {
    std::vector<Attribute> out;
    for (const char *name :
         {"consonant", "sonorant", "fricative", "nasal", "stop", "approximant",
          "affricate", "liquid", "vowel", "semivowel", "continuant"})
      out.push_back({name, AttributeGroup::kManner});
    for (const char *name :
         {"alveolar", "palatal", "dental", "glottal", "labial", "velar", "mid",
          "high", "low", "front", "back", "central", "anterior", "posterior",
          "retroflex", "bilabial", "coronal", "dorsal"})
      out.push_back({name, AttributeGroup::kPlace});
    for (const char *name :
         {"long", "short", "monophthong", "diphthong", "round", "voiced"})
      out.push_back({name, AttributeGroup::kOther});
    return out;
  }();
  return attributes;
}

const std::vector<std::string> &CanonicalPhonemes() {
  static const std::vector<std::string> phonemes = {
      "aa", "ae", "ah", "ao", "aw", "ay", "b",  "ch", "d",  "dh",
      "eh", "er", "ey", "f",  "g",  "hh", "ih", "iy", "jh", "k",
      "l",  "m",  "n",  "ng", "ow", "oy", "p",  "r",  "s",  "sh",
      "t",  "th", "uh", "uw", "v",  "w",  "y",  "z",  "zh"};
  return phonemes;
}

bool IsCanonicalPhoneme(std::string_view symbol) {
  const auto &set = CanonicalPhonemes();
  return std::find(set.begin(), set.end(), symbol) != set.end();
}

std::string AttributeAlphabet(std::string_view attribute) {
  return "attribute:" + std::string(attribute);
}

std::string PlusToken(std::string_view attribute) {
  return "+" + std::string(attribute);
}

std::string MinusToken(std::string_view attribute) {
  return "-" + std::string(attribute);
}

std::optional<std::string> AttributeOfAlphabet(std::string_view alphabet_id) {
  constexpr std::string_view prefix = "attribute:";
  if (alphabet_id.substr(0, prefix.size()) != prefix) return std::nullopt;
  return std::string(alphabet_id.substr(prefix.size()));
}

std::vector<std::string> SplitTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += separator;
    out += tokens[i];
  }
  return out;
}

void ValidateTokenSequence(const TokenSequence &sequence) {
  if (sequence.alphabet_id == kPhonemeAlphabet) {
    for (const auto &token : sequence.tokens) {
      if (!IsCanonicalPhoneme(token))
        throw Error(ErrorCode::kAlphabetMismatch,
                    "token '" + token + "' is not a phoneme");
    }
    return;
  }
  if (auto attribute = AttributeOfAlphabet(sequence.alphabet_id)) {
    const std::string plus = PlusToken(*attribute);
    const std::string minus = MinusToken(*attribute);
    for (const auto &token : sequence.tokens) {
      if (token != plus && token != minus)
        throw Error(ErrorCode::kAlphabetMismatch,
                    "token '" + token + "' is not in " + sequence.alphabet_id);
    }
  }
}

AttributeTable AttributeTable::Parse(std::string_view source) {
  AttributeTable table;
  const auto &attributes = CanonicalAttributes();
  // column_to_attribute[c] is the canonical index of data column c.
  std::vector<std::size_t> column_to_attribute;
  bool have_header = false;
  std::size_t line_number = 0;

  std::istringstream in{std::string(source)};
  std::string raw_line;
  while (std::getline(in, raw_line)) {
    ++line_number;
    std::string_view line = raw_line;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;
    if (Trim(line).front() == '#') {
      std::string_view comment = Trim(Trim(line).substr(1));
      constexpr std::string_view tag = "version:";
      if (comment.substr(0, tag.size()) == tag)
        table.version_ = std::string(Trim(comment.substr(tag.size())));
      continue;
    }
    auto cells = SplitTabs(line);
    const std::string where = "line " + std::to_string(line_number);

    if (!have_header) {
      if (cells.empty() || ToLower(cells[0]) != "phoneme")
        throw Error(ErrorCode::kParse,
                    where + ": header must start with 'phoneme'");
      if (cells.size() != kNumAttributes + 1)
        throw Error(ErrorCode::kBadDimension,
                    where + ": header has " + std::to_string(cells.size() - 1) +
                        " attribute columns, expected " +
                        std::to_string(kNumAttributes));
      std::vector<bool> seen(kNumAttributes, false);
      for (std::size_t c = 1; c < cells.size(); ++c) {
        std::string name = ToLower(cells[c]);
        auto it = std::find_if(attributes.begin(), attributes.end(),
                               [&](const Attribute &a) { return a.name == name; });
        if (it == attributes.end())
          throw Error(ErrorCode::kUnknownAttribute,
                      where + ", column " + std::to_string(c) +
                          ": unknown attribute '" + name + "'");
        std::size_t index = static_cast<std::size_t>(it - attributes.begin());
        if (seen[index])
          throw Error(ErrorCode::kDuplicateAttribute,
                      where + ": attribute '" + name + "' repeated");
        seen[index] = true;
        column_to_attribute.push_back(index);
      }
      have_header = true;
      continue;
    }

    std::string symbol = ToLower(cells[0]);
    if (cells.size() != kNumAttributes + 1)
      throw Error(ErrorCode::kBadDimension,
                  where + " ('" + symbol + "'): " +
                      std::to_string(cells.size() - 1) + " values, expected " +
                      std::to_string(kNumAttributes));
    if (!IsCanonicalPhoneme(symbol))
      throw Error(ErrorCode::kUnknownPhoneme,
                  where + ": '" + symbol + "' is not in the phoneme set");
    if (table.rows_.count(symbol))
      throw Error(ErrorCode::kParse, where + ": duplicate row for '" + symbol + "'");
    AttributeSignature sig;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (cells[c] != "0" && cells[c] != "1")
        throw Error(ErrorCode::kParse,
                    where + " ('" + symbol + "'), column " + std::to_string(c) +
                        ": expected 0 or 1, got '" + std::string(cells[c]) + "'");
      sig[column_to_attribute[c - 1]] = cells[c] == "1";
    }
    table.phonemes_.push_back(symbol);
    table.rows_.emplace(symbol, sig);
  }

  if (!have_header)
    throw Error(ErrorCode::kParse, "attribute table has no header row");
  for (const auto &phoneme : CanonicalPhonemes()) {
    if (!table.rows_.count(phoneme))
      throw Error(ErrorCode::kMissingPhoneme,
                  "no row for phoneme '" + phoneme + "'");
  }

  std::unordered_map<AttributeSignature, std::string> owners;
  for (const auto &phoneme : table.phonemes_) {
    const auto &sig = table.rows_.at(phoneme);
    auto [it, inserted] = owners.emplace(sig, phoneme);
    if (!inserted)
      throw Error(ErrorCode::kDuplicateSignature,
                  "phonemes '" + it->second + "' and '" + phoneme +
                      "' share signature " + SignatureString(sig));
  }

  for (const auto &required : kRequiredBits) {
    std::size_t index = table.AttributeIndex(required.attribute);
    if (table.rows_.at(required.phoneme)[index] != required.value)
      throw Error(ErrorCode::kInconsistentSignature,
                  std::string("phoneme '") + required.phoneme + "' must be " +
                      (required.value ? "+" : "-") + required.attribute);
  }
  return table;
}

const AttributeTable &AttributeTable::Default() {
  static const AttributeTable table = Parse(DefaultAttributeTableSource());
  return table;
}

bool AttributeTable::HasPhoneme(std::string_view symbol) const {
  return rows_.count(std::string(symbol)) > 0;
}

const AttributeSignature &AttributeTable::Signature(
    std::string_view phoneme) const {
  auto it = rows_.find(std::string(phoneme));
  if (it == rows_.end())
    throw Error(ErrorCode::kUnknownPhoneme,
                "unknown phoneme '" + std::string(phoneme) + "'");
  return it->second;
}

std::optional<std::string> AttributeTable::PhonemeFor(
    const AttributeSignature &sig) const {
  for (const auto &phoneme : phonemes_) {
    if (rows_.at(phoneme) == sig) return phoneme;
  }
  return std::nullopt;
}

std::size_t AttributeTable::AttributeIndex(std::string_view name) const {
  const auto &attributes = attribute_order();
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownAttribute,
              "unknown attribute '" + std::string(name) + "'");
}

TokenSequence ParsePhonemeSequence(const AttributeTable &table,
                                   std::string_view text) {
  TokenSequence out{std::string(kPhonemeAlphabet), {}};
  for (auto &token : SplitTokens(text)) {
    std::string symbol = ToLower(token);
    if (!table.HasPhoneme(symbol))
      throw Error(ErrorCode::kUnknownPhoneme,
                  "unknown phoneme '" + token + "'");
    out.tokens.push_back(std::move(symbol));
  }
  return out;
}

TokenSequence PhonemesToAttributeSequence(const AttributeTable &table,
                                          std::string_view attribute,
                                          const TokenSequence &phonemes) {
  if (phonemes.alphabet_id != kPhonemeAlphabet)
    throw Error(ErrorCode::kAlphabetMismatch,
                "expected a phoneme sequence, got " + phonemes.alphabet_id);
  const std::size_t index = table.AttributeIndex(attribute);
  const std::string plus = PlusToken(attribute);
  const std::string minus = MinusToken(attribute);
  TokenSequence out{AttributeAlphabet(attribute), {}};
  out.tokens.reserve(phonemes.size());
  for (const auto &phoneme : phonemes.tokens)
    out.tokens.push_back(table.Signature(phoneme)[index] ? plus : minus);
  return out;
}

std::vector<TokenSequence> PhonemesToAllAttributeSequences(
    const AttributeTable &table, const TokenSequence &phonemes) {
  std::vector<TokenSequence> out;
  out.reserve(kNumAttributes);
  for (const auto &attribute : table.attribute_order())
    out.push_back(PhonemesToAttributeSequence(table, attribute.name, phonemes));
  return out;
}

std::vector<SignatureDifference> SignatureDiff(const AttributeTable &table,
                                               std::string_view a,
                                               std::string_view b) {
  const auto &sig_a = table.Signature(a);
  const auto &sig_b = table.Signature(b);
  std::vector<SignatureDifference> out;
  const auto &attributes = table.attribute_order();
  for (std::size_t i = 0; i < kNumAttributes; ++i) {
    if (sig_a[i] != sig_b[i])
      out.push_back({attributes[i].name, sig_a[i], sig_b[i]});
  }
  return out;
}

}  // namespace sctc
