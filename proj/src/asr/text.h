// asr/text.h

// Copyright 2026  ASRKit Authors

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

#ifndef ASR_TEXT_H_
#define ASR_TEXT_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace asr {

// Ordered character inventory. Each symbol is a single code point; the CTC
// blank is the implicit last index and never maps to a character.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(const std::vector<std::string>& symbols);

  // One symbol per line, UTF-8; '#' lines are comments, empty lines skipped.
  static Alphabet LoadFile(const std::string& path);
  static Alphabet Parse(const std::string& text);

  int Size() const { return static_cast<int>(symbols_.size()); }
  int BlankIndex() const { return Size(); }
  int NumLabels() const { return Size() + 1; }  // including blank
  int SpaceIndex() const { return space_index_; }

  const std::string& Symbol(int index) const { return symbols_[index]; }
  char32_t SymbolCp(int index) const { return codepoints_[index]; }
  std::optional<int> IndexOf(char32_t cp) const;
  bool Contains(char32_t cp) const { return IndexOf(cp).has_value(); }

  // Stable content hash used for checkpoint/LM consistency checks.
  uint64_t Hash() const;

  std::vector<int> Encode(const std::string& text) const;  // throws DataError on unknown chars
  std::string Decode(const std::vector<int>& labels) const;

 private:
  std::vector<std::string> symbols_;
  std::vector<char32_t> codepoints_;
  std::unordered_map<char32_t, int> index_;
  int space_index_ = -1;
};

// Arabic combining marks (tashkil) and the marks of interest.
namespace mark {
constexpr char32_t kFathatan = 0x064B;
constexpr char32_t kDammatan = 0x064C;
constexpr char32_t kKasratan = 0x064D;
constexpr char32_t kFatha = 0x064E;
constexpr char32_t kDamma = 0x064F;
constexpr char32_t kKasra = 0x0650;
constexpr char32_t kShadda = 0x0651;
constexpr char32_t kSukun = 0x0652;
constexpr char32_t kMadda = 0x0653;
constexpr char32_t kHamzaAbove = 0x0654;
constexpr char32_t kHamzaBelow = 0x0655;
}  // namespace mark

struct NormalizationPolicy {
  std::set<char32_t> strip_diacritics;
  std::set<char32_t> keep_marks;
  bool reject_outside = true;

  // Strips the short vowels, tanwin, shadda and sukun; keeps hamza above
  // (and leaves madda/hamza below untouched).
  static NormalizationPolicy Default();
};

struct Rejection {
  std::string offending;  // UTF-8 of the character that failed
  std::string reason;
};

struct NormalizeResult {
  std::string text;
  std::optional<Rejection> rejection;
  bool Ok() const { return !rejection.has_value(); }
};

// Canonical-decomposes Arabic letters, applies the mark policy, recomposes
// kept marks onto their bases, collapses whitespace, and checks the result
// against the alphabet. A rejection is a value, not an error.
NormalizeResult NormalizeText(const std::string& raw, const NormalizationPolicy& policy,
                              const Alphabet& alphabet);

}  // namespace asr

#endif  // ASR_TEXT_H_
