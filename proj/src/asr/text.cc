// asr/text.cc

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

#include "asr/text.h"

#include <algorithm>
#include <fstream>

#include "asr/common.h"
#include "asr/utf8.h"

namespace asr {

Alphabet::Alphabet(const std::vector<std::string>& symbols) {
  bool space_seen = false;
  for (const auto& sym : symbols) {
    std::vector<char32_t> cps = Utf8Decode(sym);
    if (cps.size() != 1)
      throw ConfigError(StrCat("alphabet: symbol '", sym, "' is not a single code point"));
    char32_t cp = cps[0];
    if (index_.count(cp)) throw ConfigError(StrCat("alphabet: duplicate symbol '", sym, "'"));
    if (cp == U' ') {
      if (space_seen) throw ConfigError("alphabet: space listed twice");
      space_seen = true;
      space_index_ = static_cast<int>(symbols_.size());
    }
    index_[cp] = static_cast<int>(symbols_.size());
    symbols_.push_back(sym);
    codepoints_.push_back(cp);
  }
  if (!space_seen) throw ConfigError("alphabet: word-separator space is required");
}

Alphabet Alphabet::Parse(const std::string& text) {
  std::vector<std::string> symbols;
  std::string line;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      line = text.substr(pos);
      pos = text.size() + 1;
    } else {
      line = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    symbols.push_back(line);
  }
  return Alphabet(symbols);
}

Alphabet Alphabet::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(StrCat("alphabet: cannot open ", path));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return Parse(text);
}

std::optional<int> Alphabet::IndexOf(char32_t cp) const {
  auto it = index_.find(cp);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint64_t Alphabet::Hash() const {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : symbols_) {
    h = Fnv1a64(s, h);
    h = Fnv1a64("\n", h);
  }
  return h;
}

std::vector<int> Alphabet::Encode(const std::string& text) const {
  std::vector<char32_t> cps = Utf8Decode(text);
  std::vector<int> labels;
  labels.reserve(cps.size());
  for (char32_t cp : cps) {
    auto idx = IndexOf(cp);
    if (!idx)
      throw DataError(StrCat("encode: character '", Utf8Encode(cp),
                             "' not in alphabet (was the text normalized?)"));
    labels.push_back(*idx);
  }
  return labels;
}

std::string Alphabet::Decode(const std::vector<int>& labels) const {
  std::string out;
  for (int l : labels) {
    if (l < 0 || l >= Size()) throw DataError(StrCat("decode: label ", l, " out of range"));
    out += symbols_[l];
  }
  return out;
}

NormalizationPolicy NormalizationPolicy::Default() {
  NormalizationPolicy p;
  p.strip_diacritics = {mark::kFathatan, mark::kDammatan, mark::kKasratan, mark::kFatha,
                        mark::kDamma,    mark::kKasra,    mark::kShadda,   mark::kSukun};
  p.keep_marks = {mark::kHamzaAbove};
  p.reject_outside = true;
  return p;
}

namespace {

// Canonical decompositions within the Arabic block (UnicodeData.txt). These
// cover the hamza- and madda-bearing letters; recomposition uses the same
// table in reverse.
struct Decomp {
  char32_t composed, base, mark;
};

constexpr Decomp kArabicDecomp[] = {
    {0x0622, 0x0627, 0x0653},  // alef with madda
    {0x0623, 0x0627, 0x0654},  // alef with hamza above
    {0x0624, 0x0648, 0x0654},  // waw with hamza above
    {0x0625, 0x0627, 0x0655},  // alef with hamza below
    {0x0626, 0x064A, 0x0654},  // yeh with hamza above
    {0x06C0, 0x06D5, 0x0654},  // heh with yeh above
    {0x06C2, 0x06C1, 0x0654},  // heh goal with hamza above
    {0x06D3, 0x06D2, 0x0654},  // yeh barree with hamza above
};

bool LookupDecomp(char32_t cp, char32_t* base, char32_t* mark) {
  for (const auto& d : kArabicDecomp) {
    if (d.composed == cp) {
      *base = d.base;
      *mark = d.mark;
      return true;
    }
  }
  return false;
}

bool LookupCompose(char32_t base, char32_t mark, char32_t* composed) {
  for (const auto& d : kArabicDecomp) {
    if (d.base == base && d.mark == mark) {
      *composed = d.composed;
      return true;
    }
  }
  return false;
}

bool IsCombiningMark(char32_t cp) { return cp >= 0x064B && cp <= 0x065F; }

bool IsWhitespace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v' ||
         cp == 0x00A0;
}

}  // namespace

NormalizeResult NormalizeText(const std::string& raw, const NormalizationPolicy& policy,
                              const Alphabet& alphabet) {
  for (char32_t m : policy.keep_marks) {
    if (policy.strip_diacritics.count(m))
      throw ConfigError("normalize: strip and keep mark sets overlap");
  }

  // 1. Decompose precomposed letters so the mark policy applies uniformly.
  std::vector<char32_t> cps;
  for (char32_t cp : Utf8Decode(raw)) {
    char32_t base, mk;
    if (LookupDecomp(cp, &base, &mk)) {
      cps.push_back(base);
      cps.push_back(mk);
    } else {
      cps.push_back(cp);
    }
  }

  // 2. Drop stripped marks; surviving marks recompose onto their bases.
  std::vector<char32_t> kept;
  for (char32_t cp : cps) {
    if (IsCombiningMark(cp)) {
      if (policy.strip_diacritics.count(cp)) continue;
      char32_t composed;
      if (!kept.empty() && LookupCompose(kept.back(), cp, &composed)) {
        kept.back() = composed;
      } else {
        kept.push_back(cp);
      }
      continue;
    }
    kept.push_back(cp);
  }

  // 3. Collapse whitespace runs and trim.
  std::vector<char32_t> squeezed;
  for (char32_t cp : kept) {
    if (IsWhitespace(cp)) {
      if (!squeezed.empty() && squeezed.back() != U' ') squeezed.push_back(U' ');
    } else {
      squeezed.push_back(cp);
    }
  }
  while (!squeezed.empty() && squeezed.back() == U' ') squeezed.pop_back();

  NormalizeResult res;
  if (policy.reject_outside) {
    for (char32_t cp : squeezed) {
      if (!alphabet.Contains(cp)) {
        res.rejection = Rejection{Utf8Encode(cp), StrCat("character U+", std::hex, std::uppercase,
                                                         static_cast<uint32_t>(cp),
                                                         " outside the alphabet")};
        return res;
      }
    }
  }
  res.text = Utf8Encode(squeezed);
  return res;
}

}  // namespace asr
