// asr/lm.h

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

#ifndef ASR_LM_H_
#define ASR_LM_H_

#include <string>
#include <unordered_map>
#include <vector>

namespace asr {

inline const std::string kSentStart = "<s>";
inline const std::string kSentEnd = "</s>";
inline const std::string kUnknown = "<unk>";

// Backoff n-gram model with log10 probabilities (ARPA semantics):
// P(w | h) = prob[h w] if listed, else backoff[h] * P(w | shorter h).
class NGramModel {
 public:
  int order = 0;
  // Keys are space-joined token strings.
  std::unordered_map<std::string, double> prob;     // log10 probability
  std::unordered_map<std::string, double> backoff;  // log10 backoff weight
  std::vector<std::string> vocab;  // sorted; includes <s>, </s>, <unk>

  // log10 P(word | context), context ordered oldest first. Unknown words
  // fall through to the <unk> unigram.
  double LogProb(const std::vector<std::string>& context, const std::string& word) const;

  // Same, but using at most max_order-gram entries (training uses this to
  // interpolate with the next-lower level).
  double LogProbCapped(const std::vector<std::string>& context, const std::string& word,
                       int max_order) const;

  // log10 probability of a whole sentence including the </s> transition.
  double ScoreSentence(const std::string& sentence) const;

  // 10^(-total log10 / token count); tokens include one </s> per sentence.
  double Perplexity(const std::vector<std::string>& sentences) const;

  // Words the model can be asked to predict (vocab minus <s>).
  std::vector<std::string> PredictableVocab() const;

  // Optional consistency stamp checked against checkpoints at decode time.
  uint64_t alphabet_hash = 0;
  bool has_alphabet_hash = false;
};

// Interpolated Kneser-Ney with one absolute discount per order, estimated as
// n1/(n1+2*n2) from the count-of-count statistics of that order. Lower
// orders use continuation counts except for <s>-initial n-grams, which keep
// raw counts. The unigram level interpolates with the uniform distribution
// over the predictable vocabulary (including <unk>).
NGramModel TrainKneserNey(const std::vector<std::vector<std::string>>& sentences, int order);
NGramModel TrainKneserNeyText(const std::vector<std::string>& lines, int order);

std::string ExportArpa(const NGramModel& model);
NGramModel ImportArpa(const std::string& text);
void ExportArpaFile(const std::string& path, const NGramModel& model);
NGramModel ImportArpaFile(const std::string& path);

std::vector<std::string> Tokenize(const std::string& sentence);

}  // namespace asr

#endif  // ASR_LM_H_
