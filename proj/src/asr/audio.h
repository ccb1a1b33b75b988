// asr/audio.h

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

#ifndef ASR_AUDIO_H_
#define ASR_AUDIO_H_

#include <string>
#include <vector>

namespace asr {

// Mono sample buffer, amplitudes in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double Duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

struct SegmentSpec {
  double min_duration = 2.0;
  double max_duration = 30.0;
  double silence_threshold_db = -40.0;  // dBFS on frame RMS
  double min_silence = 0.3;             // seconds
};

struct SegmentSpan {
  double start = 0.0;  // seconds
  double end = 0.0;
};

struct SegmentResult {
  std::vector<SegmentSpan> spans;
  std::vector<std::string> rejections;  // human-readable reasons for dropped material
};

// Decodes a RIFF/WAVE 16-bit PCM container to a mono buffer. Stereo inputs
// are averaged; samples are scaled by 1/32768.
AudioBuffer DecodePcm(const std::string& wav_bytes);
AudioBuffer DecodePcmFile(const std::string& path);

// Re-quantizes to 16-bit mono PCM. Inverse of DecodePcm on its range.
std::string EncodePcm(const AudioBuffer& buf);
void EncodePcmFile(const std::string& path, const AudioBuffer& buf);

// Band-limited sample-rate conversion (Kaiser-windowed sinc, beta = 8,
// 32 taps per output phase). Identical rates return the input unchanged.
AudioBuffer Resample(const AudioBuffer& buf, int target_rate);

// Second-order Butterworth high-pass (bilinear transform, causal).
AudioBuffer Highpass(const AudioBuffer& buf, double cutoff_hz);

// Splits a buffer into spans of min..max seconds, cutting at detected
// silences where possible and at the max-duration boundary otherwise.
SegmentResult Segment(const AudioBuffer& buf, const SegmentSpec& spec);

// Extracts [start, end) seconds as a new buffer.
AudioBuffer Slice(const AudioBuffer& buf, double start, double end);

}  // namespace asr

#endif  // ASR_AUDIO_H_
