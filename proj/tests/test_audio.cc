// tests/test_audio.cc

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

#include "asr/audio.h"
#include "asr/common.h"
#include "asr/wav.h"
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

// Quadrature projection over a window holding an integer number of cycles.
double ToneAmplitude(const AudioBuffer& buf, double freq, double start_s, double end_s) {
  int64_t a = std::llround(start_s * buf.sample_rate);
  int64_t b = std::llround(end_s * buf.sample_rate);
  double ss = 0.0, sc = 0.0;
  for (int64_t i = a; i < b; i++) {
    double ph = 2.0 * M_PI * freq * static_cast<double>(i) / buf.sample_rate;
    ss += buf.samples[i] * std::sin(ph);
    sc += buf.samples[i] * std::cos(ph);
  }
  double n = static_cast<double>(b - a);
  return 2.0 / n * std::sqrt(ss * ss + sc * sc);
}

}  // namespace

TEST_CASE("decode_pcm passes mono 16-bit through with 1/32768 scaling") {
  WavData wav;
  wav.sample_rate = 16000;
  wav.channels = 1;
  wav.samples.resize(32000);
  for (size_t i = 0; i < wav.samples.size(); i++)
    wav.samples[i] = static_cast<int16_t>((i * 37) % 65536 - 32768);
  AudioBuffer buf = DecodePcm(WriteWav(wav));
  CHECK(buf.sample_rate == 16000);
  REQUIRE(buf.samples.size() == 32000);
  for (size_t i = 0; i < 100; i++) CHECK(buf.samples[i] == wav.samples[i] / 32768.0);
}

TEST_CASE("decode_pcm averages stereo channels") {
  WavData wav;
  wav.sample_rate = 16000;
  wav.channels = 2;
  wav.samples.resize(2 * 1000);
  for (size_t i = 0; i < 1000; i++) {
    wav.samples[2 * i] = 16384;       // +0.5
    wav.samples[2 * i + 1] = -16384;  // -0.5
  }
  AudioBuffer buf = DecodePcm(WriteWav(wav));
  REQUIRE(buf.samples.size() == 1000);
  for (double s : buf.samples) CHECK(s == 0.0);
}

TEST_CASE("decode_pcm rejects malformed containers") {
  WavData wav;
  wav.sample_rate = 16000;
  wav.channels = 1;
  wav.samples.resize(100, 42);
  std::string bytes = WriteWav(wav);
  CHECK_THROWS_AS(DecodePcm(bytes.substr(0, bytes.size() - 50)), FormatError);
  CHECK_THROWS_AS(DecodePcm("not a wav file"), FormatError);
  std::string bad_bits = bytes;
  bad_bits[34] = 8;  // bits-per-sample field
  CHECK_THROWS_AS(DecodePcm(bad_bits), FormatError);
}

TEST_CASE("decode / encode / decode round-trips samples exactly") {
  Rng rng(7);
  WavData wav;
  wav.sample_rate = 16000;
  wav.channels = 1;
  wav.samples.resize(4096);
  for (auto& s : wav.samples) s = static_cast<int16_t>(rng.Int(-32768, 32767));
  AudioBuffer once = DecodePcm(WriteWav(wav));
  AudioBuffer twice = DecodePcm(EncodePcm(once));
  REQUIRE(once.samples.size() == twice.samples.size());
  for (size_t i = 0; i < once.samples.size(); i++) CHECK(once.samples[i] == twice.samples[i]);
}

TEST_CASE("resample at the same rate is bit-identical") {
  AudioBuffer buf = Sine(440.0, 0.25, 16000);
  AudioBuffer out = Resample(buf, 16000);
  REQUIRE(out.samples.size() == buf.samples.size());
  for (size_t i = 0; i < buf.samples.size(); i++) CHECK(out.samples[i] == buf.samples[i]);
}

TEST_CASE("resample output length follows the rate ratio") {
  AudioBuffer buf = Sine(440.0, 0.1, 48000);
  REQUIRE(buf.samples.size() == 4800);
  CHECK(Resample(buf, 16000).samples.size() == 1600);
}

TEST_CASE("upsampled sine keeps its spectral peak") {
  AudioBuffer buf = Sine(1000.0, 0.5, 8000);
  AudioBuffer out = Resample(buf, 16000);
  // Interior window, clear of filter edge effects.
  std::vector<double> window(out.samples.begin() + 1600, out.samples.begin() + 1600 + 4096);
  double peak = oracle::DominantFrequency(window, 16000);
  double bin_width = 16000.0 / 4096.0;
  CHECK(std::abs(peak - 1000.0) <= bin_width + 1e-9);
}

TEST_CASE("down/up resample round-trip keeps SNR above 40 dB for band-limited input") {
  // Band-limited below 3 kHz.
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.resize(16000);
  for (size_t i = 0; i < buf.samples.size(); i++) {
    double t = static_cast<double>(i);
    buf.samples[i] = 0.3 * std::sin(2.0 * M_PI * 440.0 * t / 16000) +
                     0.2 * std::sin(2.0 * M_PI * 1330.0 * t / 16000 + 0.7) +
                     0.1 * std::sin(2.0 * M_PI * 2710.0 * t / 16000 + 1.9);
  }
  AudioBuffer rt = Resample(Resample(buf, 8000), 16000);
  REQUIRE(rt.samples.size() == buf.samples.size());
  double sig = 0.0, noise = 0.0;
  for (size_t i = 200; i + 200 < buf.samples.size(); i++) {
    sig += buf.samples[i] * buf.samples[i];
    double d = rt.samples[i] - buf.samples[i];
    noise += d * d;
  }
  double snr_db = 10.0 * std::log10(sig / noise);
  CHECK(snr_db > 40.0);
}

TEST_CASE("highpass suppresses DC below 1e-3 after 0.1 s") {
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.assign(16000, 0.5);
  AudioBuffer out = Highpass(buf, 150.0);
  REQUIRE(out.samples.size() == buf.samples.size());
  for (size_t i = 1600; i < out.samples.size(); i++) CHECK(std::abs(out.samples[i]) < 1e-3);
}

TEST_CASE("highpass is -3 dB at the cutoff frequency") {
  AudioBuffer buf = Sine(150.0, 1.0, 16000);
  AudioBuffer out = Highpass(buf, 150.0);
  // 0.5 s..0.9 s holds 60 full cycles of 150 Hz.
  double a_in = ToneAmplitude(buf, 150.0, 0.5, 0.9);
  double a_out = ToneAmplitude(out, 150.0, 0.5, 0.9);
  double db = 20.0 * std::log10(a_out / a_in);
  CHECK(std::abs(db + 3.0103) < 0.2);
}

TEST_CASE("highpass passes 1 kHz with under 0.5 dB attenuation") {
  AudioBuffer buf = Sine(1000.0, 1.0, 16000);
  AudioBuffer out = Highpass(buf, 150.0);
  double db = 20.0 * std::log10(ToneAmplitude(out, 1000.0, 0.5, 0.9) /
                                ToneAmplitude(buf, 1000.0, 0.5, 0.9));
  CHECK(std::abs(db) < 0.5);
}

TEST_CASE("highpass is linear") {
  Rng rng(11);
  AudioBuffer x, y;
  x.sample_rate = y.sample_rate = 16000;
  x.samples.resize(2000);
  y.samples.resize(2000);
  for (size_t i = 0; i < 2000; i++) {
    x.samples[i] = rng.Uniform(-0.5, 0.5);
    y.samples[i] = rng.Uniform(-0.5, 0.5);
  }
  const double a = 0.7, b = -1.3;
  AudioBuffer combo;
  combo.sample_rate = 16000;
  combo.samples.resize(2000);
  for (size_t i = 0; i < 2000; i++) combo.samples[i] = a * x.samples[i] + b * y.samples[i];
  AudioBuffer hx = Highpass(x, 150.0), hy = Highpass(y, 150.0), hc = Highpass(combo, 150.0);
  for (size_t i = 0; i < 2000; i++)
    CHECK(std::abs(hc.samples[i] - (a * hx.samples[i] + b * hy.samples[i])) < 1e-9);
}

TEST_CASE("highpass validates the cutoff range") {
  AudioBuffer buf = Sine(440.0, 0.1, 16000);
  CHECK_THROWS_AS(Highpass(buf, 0.0), ConfigError);
  CHECK_THROWS_AS(Highpass(buf, 8000.0), ConfigError);
  CHECK_THROWS_AS(Highpass(buf, -5.0), ConfigError);
}

namespace {

// Noise bursts with silences at given spans.
AudioBuffer NoiseWithSilences(double seconds, const std::vector<std::pair<double, double>>& holes,
                              uint64_t seed) {
  Rng rng(seed);
  AudioBuffer buf;
  buf.sample_rate = 16000;
  buf.samples.resize(static_cast<size_t>(seconds * 16000));
  for (auto& s : buf.samples) s = rng.Uniform(-0.4, 0.4);
  for (auto [a, b] : holes) {
    int64_t lo = std::llround(a * 16000), hi = std::llround(b * 16000);
    for (int64_t i = lo; i < hi && i < static_cast<int64_t>(buf.samples.size()); i++)
      buf.samples[i] = 0.0;
  }
  return buf;
}

}  // namespace

TEST_CASE("segment keeps a short-enough buffer whole") {
  AudioBuffer buf = NoiseWithSilences(10.0, {}, 3);
  SegmentResult res = Segment(buf, SegmentSpec{});
  REQUIRE(res.spans.size() == 1);
  CHECK(res.spans[0].start == doctest::Approx(0.0));
  CHECK(res.spans[0].end == doctest::Approx(10.0));
  CHECK(res.rejections.empty());
}

TEST_CASE("segment cuts a long buffer inside a silence") {
  AudioBuffer buf = NoiseWithSilences(60.0, {{24.5, 25.5}}, 4);
  SegmentResult res = Segment(buf, SegmentSpec{});
  REQUIRE(res.spans.size() >= 2);
  // Every span within limits, spans tile [0, 60] in order.
  double cursor = 0.0;
  bool cut_in_silence = false;
  for (const auto& s : res.spans) {
    CHECK(s.start == doctest::Approx(cursor));
    CHECK(s.end - s.start >= 2.0);
    CHECK(s.end - s.start <= 30.0 + 1e-9);
    if (s.end > 24.5 && s.end < 25.5) cut_in_silence = true;
    cursor = s.end;
  }
  CHECK(cut_in_silence);
}

TEST_CASE("segment rejects audio shorter than the minimum") {
  AudioBuffer buf = NoiseWithSilences(1.0, {}, 5);
  SegmentResult res = Segment(buf, SegmentSpec{});
  CHECK(res.spans.empty());
  REQUIRE(res.rejections.size() == 1);
}

TEST_CASE("segment spans respect bounds over random silence layouts") {
  for (uint64_t seed = 0; seed < 20; seed++) {
    Rng rng(seed + 100);
    double total = rng.Uniform(5.0, 120.0);
    std::vector<std::pair<double, double>> holes;
    int n_holes = rng.Int(0, 6);
    for (int i = 0; i < n_holes; i++) {
      double a = rng.Uniform(0.0, total - 1.0);
      holes.push_back({a, a + rng.Uniform(0.35, 1.5)});
    }
    AudioBuffer buf = NoiseWithSilences(total, holes, seed + 200);
    SegmentResult res = Segment(buf, SegmentSpec{});
    double cursor = -1.0;
    for (const auto& s : res.spans) {
      CHECK(s.end - s.start >= 2.0 - 1e-9);
      CHECK(s.end - s.start <= 30.0 + 1e-9);
      CHECK(s.start >= cursor);  // ordered, no overlap
      cursor = s.end;
    }
  }
}

TEST_CASE("segment validates the spec") {
  AudioBuffer buf = NoiseWithSilences(5.0, {}, 6);
  SegmentSpec bad;
  bad.min_duration = 30.0;
  bad.max_duration = 2.0;
  CHECK_THROWS_AS(Segment(buf, bad), ConfigError);
  AudioBuffer empty;
  empty.sample_rate = 16000;
  CHECK_THROWS_AS(Segment(empty, SegmentSpec{}), DataError);
}
