// asr/audio.cc

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

#include "asr/audio.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "asr/common.h"
#include "asr/wav.h"

namespace asr {

AudioBuffer DecodePcm(const std::string& wav_bytes) {
  WavData wav = ReadWav(wav_bytes);
  AudioBuffer buf;
  buf.sample_rate = wav.sample_rate;
  size_t frames = wav.samples.size() / wav.channels;
  buf.samples.resize(frames);
  const double scale = 1.0 / 32768.0;
  if (wav.channels == 1) {
    for (size_t i = 0; i < frames; i++) buf.samples[i] = wav.samples[i] * scale;
  } else {
    for (size_t i = 0; i < frames; i++) {
      double l = wav.samples[2 * i] * scale;
      double r = wav.samples[2 * i + 1] * scale;
      buf.samples[i] = 0.5 * (l + r);
    }
  }
  return buf;
}

AudioBuffer DecodePcmFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("audio: cannot open ", path));
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return DecodePcm(bytes);
}

namespace {

WavData Quantize(const AudioBuffer& buf) {
  WavData wav;
  wav.sample_rate = buf.sample_rate;
  wav.channels = 1;
  wav.samples.resize(buf.samples.size());
  for (size_t i = 0; i < buf.samples.size(); i++) {
    double v = std::clamp(buf.samples[i], -1.0, 1.0) * 32768.0;
    long q = std::lround(v);
    q = std::clamp(q, -32768L, 32767L);
    wav.samples[i] = static_cast<int16_t>(q);
  }
  return wav;
}

}  // namespace

std::string EncodePcm(const AudioBuffer& buf) { return WriteWav(Quantize(buf)); }

void EncodePcmFile(const std::string& path, const AudioBuffer& buf) {
  WriteWavFile(path, Quantize(buf));
}

namespace {

// Modified Bessel I0 by its power series; converges quickly for beta <= 20.
double BesselI0(double x) {
  double sum = 1.0, term = 1.0;
  double half_x = 0.5 * x;
  for (int k = 1; k < 64; k++) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double Sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer Resample(const AudioBuffer& buf, int target_rate) {
  if (target_rate <= 0) throw ConfigError("resample: target rate must be positive");
  if (buf.sample_rate <= 0) throw ConfigError("resample: source rate must be positive");
  if (target_rate == buf.sample_rate) return buf;

  const double step = static_cast<double>(buf.sample_rate) / target_rate;  // input samples/output
  const int64_t in_n = static_cast<int64_t>(buf.samples.size());
  const int64_t out_n = std::llround(static_cast<double>(in_n) * target_rate / buf.sample_rate);

  const double kBeta = 8.0;
  const int kTapsPerPhase = 32;
  // When downsampling, the kernel stretches by the decimation factor to act
  // as the anti-alias filter.
  const double stretch = std::max(1.0, step);
  const double half_width = 0.5 * kTapsPerPhase * stretch;
  const double cutoff = 0.5 / stretch * 0.95;  // cycles per input sample, with rolloff margin
  const double i0_beta = BesselI0(kBeta);

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.resize(out_n);
  for (int64_t j = 0; j < out_n; j++) {
    const double t = j * step;
    const int64_t k_lo = static_cast<int64_t>(std::ceil(t - half_width));
    const int64_t k_hi = static_cast<int64_t>(std::floor(t + half_width));
    double acc = 0.0, norm = 0.0;
    for (int64_t k = k_lo; k <= k_hi; k++) {
      const double tau = t - k;
      const double u = tau / half_width;  // in [-1, 1]
      const double win = BesselI0(kBeta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
      const double h = 2.0 * cutoff * Sinc(2.0 * cutoff * tau) * win;
      norm += h;
      if (k >= 0 && k < in_n) acc += h * buf.samples[k];
    }
    // Per-phase normalization keeps the DC gain exactly one.
    out.samples[j] = norm != 0.0 ? acc / norm : 0.0;
  }
  return out;
}

AudioBuffer Highpass(const AudioBuffer& buf, double cutoff_hz) {
  if (buf.sample_rate <= 0) throw ConfigError("highpass: invalid sample rate");
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < 0.5 * buf.sample_rate))
    throw ConfigError(StrCat("highpass: cutoff ", cutoff_hz, " Hz outside (0, ",
                             0.5 * buf.sample_rate, ")"));

  // Butterworth biquad (Q = 1/sqrt(2)) via the bilinear transform; the
  // trigonometric form prewarps so the -3 dB point lands on cutoff_hz.
  const double w0 = 2.0 * M_PI * cutoff_hz / buf.sample_rate;
  const double q = 1.0 / std::sqrt(2.0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double cosw0 = std::cos(w0);
  const double a0 = 1.0 + alpha;
  const double b0 = (1.0 + cosw0) / 2.0 / a0;
  const double b1 = -(1.0 + cosw0) / a0;
  const double b2 = b0;
  const double a1 = -2.0 * cosw0 / a0;
  const double a2 = (1.0 - alpha) / a0;

  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.resize(buf.samples.size());
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (size_t i = 0; i < buf.samples.size(); i++) {
    double x = buf.samples[i];
    double y = b0 * x + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = x;
    y2 = y1;
    y1 = y;
    out.samples[i] = y;
  }
  return out;
}

namespace {

// Maximal runs of frames whose RMS sits below the silence threshold.
struct SilentInterval {
  double start, end;
  double Mid() const { return 0.5 * (start + end); }
};

std::vector<SilentInterval> FindSilences(const AudioBuffer& buf, const SegmentSpec& spec) {
  const int win = std::max(1, buf.sample_rate / 50);  // 20 ms
  const int hop = std::max(1, buf.sample_rate / 100);  // 10 ms
  const int64_t n = static_cast<int64_t>(buf.samples.size());
  std::vector<SilentInterval> out;
  if (n < win) return out;

  const double thresh_lin2 = std::pow(10.0, spec.silence_threshold_db / 10.0);
  int64_t run_start = -1;
  int64_t frames = 1 + (n - win) / hop;
  for (int64_t f = 0; f <= frames; f++) {
    bool silent = false;
    if (f < frames) {
      const double* x = buf.samples.data() + f * hop;
      double e = 0.0;
      for (int i = 0; i < win; i++) e += x[i] * x[i];
      silent = (e / win) < thresh_lin2;  // mean square vs squared RMS threshold
    }
    if (silent && run_start < 0) run_start = f;
    if (!silent && run_start >= 0) {
      double start = static_cast<double>(run_start * hop) / buf.sample_rate;
      double end = static_cast<double>((f - 1) * hop + win) / buf.sample_rate;
      if (end - start >= spec.min_silence) out.push_back({start, end});
      run_start = -1;
    }
  }
  return out;
}

}  // namespace

SegmentResult Segment(const AudioBuffer& buf, const SegmentSpec& spec) {
  if (!(spec.min_duration > 0.0) || !(spec.min_duration < spec.max_duration))
    throw ConfigError("segment: require 0 < min_duration < max_duration");
  if (buf.samples.empty()) throw DataError("segment: empty buffer");

  SegmentResult res;
  const double total = buf.Duration();
  if (total < spec.min_duration) {
    res.rejections.push_back(StrCat("audio of ", total, " s shorter than minimum ",
                                    spec.min_duration, " s"));
    return res;
  }

  std::vector<double> cuts;
  for (const auto& s : FindSilences(buf, spec)) cuts.push_back(s.Mid());

  // Greedy: take the last silence cut inside (start+min, start+max]; failing
  // that, a hard boundary at start+max.
  double start = 0.0;
  while (total - start > spec.max_duration) {
    double best = -1.0;
    for (double c : cuts) {
      if (c > start + spec.min_duration && c <= start + spec.max_duration) best = std::max(best, c);
    }
    double end = best > 0.0 ? best : start + spec.max_duration;
    res.spans.push_back({start, end});
    start = end;
  }
  if (total - start >= spec.min_duration) {
    res.spans.push_back({start, total});
  } else if (total - start > 0.0) {
    res.rejections.push_back(StrCat("trailing ", total - start, " s shorter than minimum ",
                                    spec.min_duration, " s"));
  }
  return res;
}

AudioBuffer Slice(const AudioBuffer& buf, double start, double end) {
  int64_t a = std::llround(start * buf.sample_rate);
  int64_t b = std::llround(end * buf.sample_rate);
  a = std::clamp<int64_t>(a, 0, static_cast<int64_t>(buf.samples.size()));
  b = std::clamp<int64_t>(b, a, static_cast<int64_t>(buf.samples.size()));
  AudioBuffer out;
  out.sample_rate = buf.sample_rate;
  out.samples.assign(buf.samples.begin() + a, buf.samples.begin() + b);
  return out;
}

}  // namespace asr
