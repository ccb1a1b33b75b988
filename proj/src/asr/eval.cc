// asr/eval.cc

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

#include "asr/eval.h"

#include <cmath>
#include <sstream>

#include "asr/common.h"
#include "asr/utf8.h"

namespace asr {

namespace {

std::vector<std::string> SplitWords(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::vector<std::string> SplitChars(const std::string& s) {
  std::vector<std::string> out;
  for (char32_t cp : Utf8Decode(s)) out.push_back(Utf8Encode(cp));
  return out;
}

WerReport AlignTokens(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) {
  const size_t m = ref.size(), n = hyp.size();
  if (m == 0) throw DataError("wer: empty reference has an undefined denominator");

  // d[i][j]: edit distance between ref[0..i) and hyp[0..j).
  std::vector<std::vector<int>> d(m + 1, std::vector<int>(n + 1, 0));
  for (size_t i = 0; i <= m; i++) d[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= n; j++) d[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= m; i++) {
    for (size_t j = 1; j <= n; j++) {
      int sub = d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int ins = d[i][j - 1] + 1;
      int del = d[i - 1][j] + 1;
      d[i][j] = std::min(sub, std::min(ins, del));
    }
  }

  // Traceback, preferring substitution/match over insertion over deletion.
  WerReport rep;
  rep.reference_tokens = static_cast<int64_t>(m);
  size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      if (ref[i - 1] != hyp[j - 1]) rep.substitutions++;
      i--;
      j--;
    } else if (j > 0 && d[i][j] == d[i][j - 1] + 1) {
      rep.insertions++;
      j--;
    } else {
      rep.deletions++;
      i--;
    }
  }
  return rep;
}

}  // namespace

WerReport WordErrorRate(const std::string& reference, const std::string& hypothesis) {
  return AlignTokens(SplitWords(reference), SplitWords(hypothesis));
}

WerReport CharErrorRate(const std::string& reference, const std::string& hypothesis) {
  return AlignTokens(SplitChars(reference), SplitChars(hypothesis));
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double BetaCf(double a, double b, double x) {
  const int kMaxIter = 300;
  const double kEps = 1e-14, kFpMin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; m++) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta: continued fraction failed to converge");
}

}  // namespace

double RegIncBeta(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) throw Error("incomplete beta: x outside [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                    b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaCf(a, b, x) / a;
  return 1.0 - front * BetaCf(b, a, 1.0 - x) / b;
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DataError("t-test: score arrays differ in length");
  const size_t n = a.size();
  if (n < 2) throw DataError("t-test: need at least two pairs");

  double mean = 0.0;
  for (size_t i = 0; i < n; i++) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (size_t i = 0; i < n; i++) {
    double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  double var = ss / static_cast<double>(n - 1);
  TTestResult res;
  res.df = static_cast<int64_t>(n) - 1;
  if (var <= 0.0) {
    // Identical systems compare as a clean null result; a constant nonzero
    // difference has no defined t statistic.
    if (mean == 0.0) return res;
    throw DataError("t-test: zero variance of differences (degenerate test)");
  }
  res.t = mean / std::sqrt(var / static_cast<double>(n));
  double df = static_cast<double>(res.df);
  res.p = RegIncBeta(0.5 * df, 0.5, df / (df + res.t * res.t));
  return res;
}

}  // namespace asr
