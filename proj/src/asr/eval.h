// asr/eval.h

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

#ifndef ASR_EVAL_H_
#define ASR_EVAL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace asr {

struct WerReport {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t reference_tokens = 0;

  int64_t Edits() const { return substitutions + deletions + insertions; }
  double Rate() const { return static_cast<double>(Edits()) / reference_tokens; }

  WerReport& operator+=(const WerReport& o) {
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    reference_tokens += o.reference_tokens;
    return *this;
  }
};

// Minimum-edit-distance alignment over space-separated words. When several
// tracebacks are optimal, substitution is preferred over insertion over
// deletion; the edit total is traceback-independent.
WerReport WordErrorRate(const std::string& reference, const std::string& hypothesis);

// Character-level variant (space counts as a token).
WerReport CharErrorRate(const std::string& reference, const std::string& hypothesis);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  int64_t df = 0;
};

// Two-sided paired t-test. Throws DataError for n < 2 or zero variance of
// the differences.
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

// Regularized incomplete beta I_x(a, b), |error| < 1e-8; exposed for tests.
double RegIncBeta(double a, double b, double x);

}  // namespace asr

#endif  // ASR_EVAL_H_
