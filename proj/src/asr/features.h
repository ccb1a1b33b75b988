// asr/features.h

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

#ifndef ASR_FEATURES_H_
#define ASR_FEATURES_H_

#include <string>

#include "asr/audio.h"
#include "asr/matrix.h"

namespace asr {

// Floor applied before taking logs of the power spectrum.
constexpr double kLogFloorPower = 1e-10;
inline const double kLogFloor = -23.025850929940457;  // log(1e-10)

// T x F log-power spectrogram; rows are frames.
struct FeatureMatrix {
  Matrix frames;                // T x F
  double frame_length = 0.02;   // seconds
  double frame_shift = 0.01;    // seconds
  int T() const { return frames.Rows(); }
  int F() const { return frames.Cols(); }
};

// Hann-windowed log-power STFT. F = window_samples/2 + 1; the tail shorter
// than one window is dropped, never padded.
FeatureMatrix Spectrogram(const AudioBuffer& buf, double frame_length = 0.02,
                          double frame_shift = 0.01);

// Per-utterance mean/variance normalization over all cells.
FeatureMatrix Normalize(const FeatureMatrix& feat);

// Binary cache: header (T, F, frame_shift, frame_length as little-endian
// 32-bit values) followed by row-major 32-bit float frames.
void WriteFeatureCache(const std::string& path, const FeatureMatrix& feat);
FeatureMatrix ReadFeatureCache(const std::string& path);

}  // namespace asr

#endif  // ASR_FEATURES_H_
