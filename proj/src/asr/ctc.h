// asr/ctc.h

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

#ifndef ASR_CTC_H_
#define ASR_CTC_H_

#include <span>
#include <string>
#include <vector>

#include "asr/lm.h"
#include "asr/matrix.h"
#include "asr/text.h"

namespace asr {

// Merges adjacent repeats, then deletes blanks.
std::vector<int> CollapsePath(std::span<const int> path, int blank);
std::string Collapse(std::span<const int> path, const Alphabet& alphabet);

struct CtcLossResult {
  double loss = 0.0;  // +inf when the target does not fit in T frames
  bool feasible = true;
};

// Negative log-likelihood of the label sequence under per-frame
// log-probabilities (T x K rows, K = |symbols| + 1, blank last). Log-space
// forward recursion over the blank-interleaved target.
CtcLossResult CtcLoss(const Matrix& logprobs, std::span<const int> labels);

// Gradient of the loss with respect to pre-softmax logits:
// softmax - alignment posterior. Throws DataError on infeasible targets.
Matrix CtcGrad(const Matrix& logprobs, std::span<const int> labels, double* loss = nullptr);

// Gradient of the loss with respect to the log-probabilities themselves
// (equals minus the alignment posterior); feeds the network backward pass.
Matrix CtcGradLogProbs(const Matrix& logprobs, std::span<const int> labels,
                       double* loss = nullptr);

std::string GreedyDecode(const Matrix& logprobs, const Alphabet& alphabet);

struct DecoderConfig {
  int beam_width = 512;
  double alpha = 1.5;  // LM weight
  double beta = 1.0;   // word insertion bonus
};

struct DecodedHyp {
  std::string text;
  double score = 0.0;     // combined (natural log)
  double acoustic = 0.0;  // combined minus LM adjustments
  double lm = 0.0;        // alpha * ln P_LM + beta, summed over words
  int word_count = 0;
};

// Prefix beam search maintaining (ending-in-blank, ending-in-non-blank)
// probabilities per prefix. Completing a word (space, or end of utterance)
// adds alpha * ln P_LM(word | history) + beta. lm may be null when alpha is
// zero. Ties break lexicographically on the prefix text.
std::vector<DecodedHyp> BeamSearchDecode(const Matrix& logprobs, const Alphabet& alphabet,
                                         const NGramModel* lm, const DecoderConfig& cfg);

}  // namespace asr

#endif  // ASR_CTC_H_
