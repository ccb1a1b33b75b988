// tests/test_features.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "asr/common.h"
#include "asr/features.h"
#include "asr/fft.h"
#include "doctest.h"
#include "oracles.h"

using namespace asr;

namespace {

AudioBuffer Sine(double freq, double seconds, int rate, double amp = 0.5) {
  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.samples.resize(static_cast<size_t>(std::llround(seconds * rate)));
  for (size_t i = 0; i < buf.samples.size(); i++)
    buf.samples[i] = amp * std::sin(2.0 * M_PI * freq * static_cast<double>(i) / rate);
  return buf;
}

AudioBuffer Noise(double seconds, int rate, uint64_t seed) {
  Rng rng(seed);
  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.samples.resize(static_cast<size_t>(seconds * rate));
  for (auto& s : buf.samples) s = rng.Uniform(-0.5, 0.5);
  return buf;
}

}  // namespace

TEST_CASE("DFT plan matches the naive DFT for 320 and 256 points") {
  Rng rng(19);
  for (int n : {320, 256, 160, 512}) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.Uniform(-1.0, 1.0);
    DftPlan plan(n);
    std::vector<std::complex<double>> got(n / 2 + 1);
    plan.Forward(x.data(), got.data());
    auto want = oracle::NaiveDft(x);
    for (int k = 0; k <= n / 2; k++) {
      CHECK(std::abs(got[k].real() - want[k].real()) < 1e-9);
      CHECK(std::abs(got[k].imag() - want[k].imag()) < 1e-9);
    }
  }
}

TEST_CASE("one second at 16 kHz gives exactly 99 x 161 features") {
  FeatureMatrix feat = Spectrogram(Noise(1.0, 16000, 2));
  CHECK(feat.T() == 99);
  CHECK(feat.F() == 161);
}

TEST_CASE("a 1 kHz sine peaks at bin 20 in every frame") {
  FeatureMatrix feat = Spectrogram(Sine(1000.0, 0.5, 16000));
  for (int t = 0; t < feat.T(); t++) {
    const double* row = feat.frames.Row(t);
    int best = 0;
    for (int k = 1; k < feat.F(); k++)
      if (row[k] > row[best]) best = k;
    CHECK(best == 20);
  }
}

TEST_CASE("silence maps to the log floor") {
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.assign(16000, 0.0);
  FeatureMatrix feat = Spectrogram(buf);
  for (int t = 0; t < feat.T(); t++)
    for (int k = 0; k < feat.F(); k++) CHECK(feat.frames(t, k) == kLogFloor);
}

TEST_CASE("buffers shorter than one window are an error") {
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.assign(200, 0.1);
  CHECK_THROWS_AS(Spectrogram(buf), DataError);
}

TEST_CASE("normalize zeroes a constant matrix and standardizes a random one") {
  FeatureMatrix feat;
  feat.frames.Resize(5, 7);
  for (int t = 0; t < 5; t++)
    for (int k = 0; k < 7; k++) feat.frames(t, k) = 3.25;
  FeatureMatrix norm = Normalize(feat);
  for (int t = 0; t < 5; t++)
    for (int k = 0; k < 7; k++) CHECK(norm.frames(t, k) == 0.0);

  FeatureMatrix rnd = Spectrogram(Noise(0.7, 16000, 3));
  FeatureMatrix n1 = Normalize(rnd);
  double mean = 0.0, var = 0.0;
  size_t n = n1.frames.Size();
  for (size_t i = 0; i < n; i++) mean += n1.frames.Data()[i];
  mean /= static_cast<double>(n);
  for (size_t i = 0; i < n; i++)
    var += (n1.frames.Data()[i] - mean) * (n1.frames.Data()[i] - mean);
  var /= static_cast<double>(n);
  CHECK(std::abs(mean) < 1e-6);
  CHECK(std::abs(var - 1.0) < 1e-3);

  FeatureMatrix n2 = Normalize(n1);
  for (size_t i = 0; i < n; i++)
    CHECK(std::abs(n2.frames.Data()[i] - n1.frames.Data()[i]) < 1e-6);
}

TEST_CASE("shifting input by one hop shifts frames by one index") {
  AudioBuffer buf = Noise(0.8, 16000, 4);
  AudioBuffer shifted;
  shifted.sample_rate = 16000;
  shifted.samples.assign(buf.samples.begin() + 160, buf.samples.end());
  FeatureMatrix a = Spectrogram(buf);
  FeatureMatrix b = Spectrogram(shifted);
  REQUIRE(b.T() >= a.T() - 1);
  for (int t = 0; t + 1 < a.T(); t++)
    for (int k = 0; k < a.F(); k++)
      CHECK(std::abs(a.frames(t + 1, k) - b.frames(t, k)) < 1e-9);
}

TEST_CASE("frame energy satisfies Parseval within 1e-6") {
  AudioBuffer buf = Noise(0.1, 16000, 5);
  const int window = 320;
  std::vector<double> hann(window), frame(window);
  for (int i = 0; i < window; i++) hann[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / window);
  for (int i = 0; i < window; i++) frame[i] = buf.samples[i] * hann[i];

  FeatureMatrix feat = Spectrogram(buf);
  // One-sided power back to a full-spectrum sum (window is even).
  double spec_sum = std::exp(feat.frames(0, 0)) + std::exp(feat.frames(0, window / 2));
  for (int k = 1; k < window / 2; k++) spec_sum += 2.0 * std::exp(feat.frames(0, k));
  double energy = 0.0;
  for (double v : frame) energy += v * v;
  CHECK(std::abs(spec_sum - window * energy) / (window * energy) < 1e-6);
}

TEST_CASE("frame count is monotone in buffer length") {
  int prev = 0;
  for (int n = 320; n < 1200; n += 7) {
    AudioBuffer buf;
    buf.sample_rate = 16000;
    buf.samples.assign(n, 0.01);
    int t = Spectrogram(buf).T();
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("feature cache round-trips within float precision") {
  FeatureMatrix feat = Normalize(Spectrogram(Noise(0.5, 16000, 6)));
  auto path = std::filesystem::temp_directory_path() / "asrkit_feat_cache_test.feat";
  WriteFeatureCache(path.string(), feat);
  FeatureMatrix rt = ReadFeatureCache(path.string());
  std::filesystem::remove(path);
  REQUIRE(rt.T() == feat.T());
  REQUIRE(rt.F() == feat.F());
  CHECK(rt.frame_shift == doctest::Approx(feat.frame_shift));
  CHECK(rt.frame_length == doctest::Approx(feat.frame_length));
  for (int t = 0; t < feat.T(); t++)
    for (int k = 0; k < feat.F(); k++)
      CHECK(std::abs(rt.frames(t, k) - feat.frames(t, k)) < 1e-6);
}
