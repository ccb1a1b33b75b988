// asr/fft.h

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

#ifndef ASR_FFT_H_
#define ASR_FFT_H_

#include <complex>
#include <vector>

namespace asr {

// In-place complex FFT; size must be a power of two.
void Fft(std::vector<std::complex<double>>* x, bool inverse);

// Forward DFT of a real frame of arbitrary length n. Uses radix-2 directly
// when n is a power of two and Bluestein's chirp-z re-expression otherwise,
// so spectrogram windows need not be power-of-two sized. A plan caches the
// chirp tables for one n and may be reused across frames.
class DftPlan {
 public:
  explicit DftPlan(int n);

  int Size() const { return n_; }

  // out must hold n/2 + 1 bins (the one-sided spectrum).
  void Forward(const double* x, std::complex<double>* out) const;

 private:
  int n_;
  bool pow2_;
  int m_;  // Bluestein convolution size (power of two >= 2n-1)
  std::vector<std::complex<double>> chirp_;      // e^{-i pi k^2 / n}
  std::vector<std::complex<double>> chirp_fft_;  // FFT of the conjugate chirp, length m_
};

}  // namespace asr

#endif  // ASR_FFT_H_
