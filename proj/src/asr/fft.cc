// asr/fft.cc

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

#include "asr/fft.h"

#include <cmath>

#include "asr/common.h"

namespace asr {

namespace {

bool IsPow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int NextPow2(int n) {
  int m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

void Fft(std::vector<std::complex<double>>* xp, bool inverse) {
  auto& x = *xp;
  const int n = static_cast<int>(x.size());
  if (!IsPow2(n)) throw Error(StrCat("Fft: size ", n, " is not a power of two"));

  // Bit-reversal permutation.
  for (int i = 1, j = 0; i < n; i++) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (int len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * M_PI / len;
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; k++) {
        std::complex<double> u = x[i + k];
        std::complex<double> v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& v : x) v /= n;
  }
}

DftPlan::DftPlan(int n) : n_(n), pow2_(IsPow2(n)), m_(0) {
  if (n <= 0) throw Error("DftPlan: size must be positive");
  if (pow2_) return;
  m_ = NextPow2(2 * n - 1);
  chirp_.resize(n);
  // Compute k^2 mod 2n to keep the angle argument small and exact.
  for (int k = 0; k < n; k++) {
    long long k2 = (static_cast<long long>(k) * k) % (2LL * n);
    double ang = -M_PI * static_cast<double>(k2) / n;
    chirp_[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }
  chirp_fft_.assign(m_, std::complex<double>(0.0, 0.0));
  chirp_fft_[0] = std::conj(chirp_[0]);
  for (int k = 1; k < n; k++) {
    chirp_fft_[k] = std::conj(chirp_[k]);
    chirp_fft_[m_ - k] = std::conj(chirp_[k]);
  }
  Fft(&chirp_fft_, false);
}

void DftPlan::Forward(const double* x, std::complex<double>* out) const {
  const int bins = n_ / 2 + 1;
  if (pow2_) {
    std::vector<std::complex<double>> buf(n_);
    for (int i = 0; i < n_; i++) buf[i] = std::complex<double>(x[i], 0.0);
    Fft(&buf, false);
    for (int k = 0; k < bins; k++) out[k] = buf[k];
    return;
  }
  // Bluestein: X_k = chirp_k * sum_j x_j chirp_j * conj-chirp_(k-j).
  std::vector<std::complex<double>> a(m_, std::complex<double>(0.0, 0.0));
  for (int j = 0; j < n_; j++) a[j] = x[j] * chirp_[j];
  Fft(&a, false);
  for (int i = 0; i < m_; i++) a[i] *= chirp_fft_[i];
  Fft(&a, true);
  for (int k = 0; k < bins; k++) out[k] = a[k] * chirp_[k];
}

}  // namespace asr
