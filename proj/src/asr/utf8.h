// asr/utf8.h

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

#ifndef ASR_UTF8_H_
#define ASR_UTF8_H_

#include <string>
#include <vector>

namespace asr {

// Throws FormatError on invalid byte sequences.
std::vector<char32_t> Utf8Decode(const std::string& s);

std::string Utf8Encode(const std::vector<char32_t>& cps);
std::string Utf8Encode(char32_t cp);

}  // namespace asr

#endif  // ASR_UTF8_H_
