// asr/features.cc

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

#include "asr/features.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <vector>

#include "asr/common.h"
#include "asr/fft.h"

namespace asr {

namespace {

int ExactSampleCount(double seconds, int rate, const char* what) {
  double exact = seconds * rate;
  double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-6 || rounded < 1.0)
    throw ConfigError(StrCat("spectrogram: ", what, " of ", seconds,
                             " s is not an integer sample count at ", rate, " Hz"));
  return static_cast<int>(rounded);
}

}  // namespace

FeatureMatrix Spectrogram(const AudioBuffer& buf, double frame_length, double frame_shift) {
  if (buf.sample_rate <= 0) throw ConfigError("spectrogram: invalid sample rate");
  const int window = ExactSampleCount(frame_length, buf.sample_rate, "frame_length");
  const int shift = ExactSampleCount(frame_shift, buf.sample_rate, "frame_shift");
  const int64_t n = static_cast<int64_t>(buf.samples.size());
  if (n < window)
    throw DataError(StrCat("spectrogram: buffer of ", n, " samples shorter than one window (",
                           window, ")"));

  const int num_frames = static_cast<int>(1 + (n - window) / shift);
  const int bins = window / 2 + 1;

  std::vector<double> hann(window);
  for (int i = 0; i < window; i++) hann[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / window);

  FeatureMatrix feat;
  feat.frame_length = frame_length;
  feat.frame_shift = frame_shift;
  feat.frames.Resize(num_frames, bins);

  DftPlan plan(window);
  std::vector<double> frame(window);
  std::vector<std::complex<double>> spec(bins);
  for (int t = 0; t < num_frames; t++) {
    const double* x = buf.samples.data() + static_cast<int64_t>(t) * shift;
    for (int i = 0; i < window; i++) frame[i] = x[i] * hann[i];
    plan.Forward(frame.data(), spec.data());
    double* row = feat.frames.Row(t);
    for (int k = 0; k < bins; k++) {
      double p = std::norm(spec[k]);
      row[k] = std::log(std::max(p, kLogFloorPower));
    }
  }
  return feat;
}

FeatureMatrix Normalize(const FeatureMatrix& feat) {
  if (feat.T() < 1) throw DataError("normalize: empty feature matrix");
  const size_t n = feat.frames.Size();
  const double* x = feat.frames.Data();
  double mean = 0.0;
  for (size_t i = 0; i < n; i++) mean += x[i];
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (size_t i = 0; i < n; i++) var += (x[i] - mean) * (x[i] - mean);
  var /= static_cast<double>(n);
  const double inv_std = 1.0 / (std::sqrt(var) + 1e-8);

  FeatureMatrix out = feat;
  double* y = out.frames.Data();
  for (size_t i = 0; i < n; i++) y[i] = (x[i] - mean) * inv_std;
  return out;
}

void WriteFeatureCache(const std::string& path, const FeatureMatrix& feat) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(StrCat("feature cache: cannot write ", path));
  uint32_t t = static_cast<uint32_t>(feat.T());
  uint32_t f = static_cast<uint32_t>(feat.F());
  float shift = static_cast<float>(feat.frame_shift);
  float length = static_cast<float>(feat.frame_length);
  out.write(reinterpret_cast<const char*>(&t), 4);
  out.write(reinterpret_cast<const char*>(&f), 4);
  out.write(reinterpret_cast<const char*>(&shift), 4);
  out.write(reinterpret_cast<const char*>(&length), 4);
  std::vector<float> row(feat.F());
  for (int r = 0; r < feat.T(); r++) {
    const double* src = feat.frames.Row(r);
    for (int c = 0; c < feat.F(); c++) row[c] = static_cast<float>(src[c]);
    out.write(reinterpret_cast<const char*>(row.data()), sizeof(float) * row.size());
  }
  if (!out) throw Error(StrCat("feature cache: short write to ", path));
}

FeatureMatrix ReadFeatureCache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("feature cache: cannot open ", path));
  uint32_t t = 0, f = 0;
  float shift = 0.0f, length = 0.0f;
  in.read(reinterpret_cast<char*>(&t), 4);
  in.read(reinterpret_cast<char*>(&f), 4);
  in.read(reinterpret_cast<char*>(&shift), 4);
  in.read(reinterpret_cast<char*>(&length), 4);
  if (!in) throw FormatError(StrCat("feature cache: truncated header in ", path));
  if (t == 0 || f == 0 || t > (1u << 24) || f > (1u << 20))
    throw FormatError(StrCat("feature cache: implausible dimensions in ", path));
  FeatureMatrix feat;
  feat.frame_shift = shift;
  feat.frame_length = length;
  feat.frames.Resize(static_cast<int>(t), static_cast<int>(f));
  std::vector<float> row(f);
  for (uint32_t r = 0; r < t; r++) {
    in.read(reinterpret_cast<char*>(row.data()), sizeof(float) * row.size());
    if (!in) throw FormatError(StrCat("feature cache: truncated frames in ", path));
    double* dst = feat.frames.Row(static_cast<int>(r));
    for (uint32_t c = 0; c < f; c++) dst[c] = row[c];
  }
  return feat;
}

}  // namespace asr
