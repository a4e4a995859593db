// include/sctc/inventory.h

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

#ifndef SCTC_INVENTORY_H_
#define SCTC_INVENTORY_H_

#include <bitset>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sctc {

inline constexpr std::size_t kNumAttributes = 35;
inline constexpr std::size_t kNumPhonemes = 39;

enum class AttributeGroup { kManner, kPlace, kOther };

std::string_view AttributeGroupName(AttributeGroup group);

struct Attribute {
  std::string name;
  AttributeGroup group;

  bool operator==(const Attribute &) const = default;
};

// The 35 attributes in canonical order: manners, then places, then the
// remaining phonological features, each group in its conventional reading
// order. Column i of every signature and category i of the default output
// layout refer to entry i of this list.
const std::vector<Attribute> &CanonicalAttributes();

// The 39-symbol lowercase ARPAbet phoneme set. "zh" is its own phoneme and
// is never folded into "sh".
const std::vector<std::string> &CanonicalPhonemes();

bool IsCanonicalPhoneme(std::string_view symbol);

// Bit i is attribute i in canonical order.
using AttributeSignature = std::bitset<kNumAttributes>;

inline constexpr std::string_view kPhonemeAlphabet = "phoneme";

// A sequence over one finite alphabet. For phonemes the alphabet id is
// "phoneme"; for attribute `a` it is "attribute:a" and tokens are "+a"/"-a".
// Blanks never appear here.
struct TokenSequence {
  std::string alphabet_id;
  std::vector<std::string> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  bool operator==(const TokenSequence &) const = default;
};

std::string AttributeAlphabet(std::string_view attribute);
std::string PlusToken(std::string_view attribute);
std::string MinusToken(std::string_view attribute);

// Returns the attribute name for an "attribute:<name>" alphabet id, or
// nullopt for any other alphabet.
std::optional<std::string> AttributeOfAlphabet(std::string_view alphabet_id);

// Whitespace split; empty input gives an empty list.
std::vector<std::string> SplitTokens(std::string_view text);
std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::string_view separator = " ");

// Throws kAlphabetMismatch if any token is outside the declared alphabet.
// Only phoneme and attribute alphabets are checked; others pass through.
void ValidateTokenSequence(const TokenSequence &sequence);

class AttributeTable {
 public:
  // Parses and validates the TSV form. Every invariant is checked here, so a
  // constructed table is always consistent.
  static AttributeTable Parse(std::string_view source);

  // The table embedded in the library at build time.
  static const AttributeTable &Default();

  const std::vector<Attribute> &attribute_order() const {
    return CanonicalAttributes();
  }
  // Phonemes in data-file row order.
  const std::vector<std::string> &phonemes() const { return phonemes_; }
  const std::string &version() const { return version_; }

  bool HasPhoneme(std::string_view symbol) const;
  const AttributeSignature &Signature(std::string_view phoneme) const;
  std::optional<std::string> PhonemeFor(const AttributeSignature &sig) const;

  // Index into attribute_order(); throws kUnknownAttribute.
  std::size_t AttributeIndex(std::string_view name) const;

 private:
  AttributeTable() = default;

  std::vector<std::string> phonemes_;
  std::unordered_map<std::string, AttributeSignature> rows_;
  std::string version_;
};

// Splits, lowercases and validates a phoneme string such as "hh aw ow".
TokenSequence ParsePhonemeSequence(const AttributeTable &table,
                                   std::string_view text);

// Maps each phoneme to "+attr" or "-attr" according to its signature.
TokenSequence PhonemesToAttributeSequence(const AttributeTable &table,
                                          std::string_view attribute,
                                          const TokenSequence &phonemes);

// One sequence per attribute, canonical order.
std::vector<TokenSequence> PhonemesToAllAttributeSequences(
    const AttributeTable &table, const TokenSequence &phonemes);

struct SignatureDifference {
  std::string attribute;
  bool bit_a;
  bool bit_b;

  bool operator==(const SignatureDifference &) const = default;
};

// Attributes whose bits differ between the two phonemes, canonical order.
std::vector<SignatureDifference> SignatureDiff(const AttributeTable &table,
                                               std::string_view a,
                                               std::string_view b);

}  // namespace sctc

#endif  // SCTC_INVENTORY_H_
