// asr/wav.h

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

#ifndef ASR_WAV_H_
#define ASR_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

namespace asr {

// Raw 16-bit PCM payload of a RIFF/WAVE container, channels interleaved.
struct WavData {
  int sample_rate = 0;
  int channels = 0;
  std::vector<int16_t> samples;  // frame-major: s[frame * channels + ch]
};

// Throws FormatError on malformed containers or non-16-bit/PCM encodings.
WavData ReadWav(const std::string& bytes);
WavData ReadWavFile(const std::string& path);

std::string WriteWav(const WavData& wav);
void WriteWavFile(const std::string& path, const WavData& wav);

}  // namespace asr

#endif  // ASR_WAV_H_
