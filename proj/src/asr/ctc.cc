// asr/ctc.cc

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

#include "asr/ctc.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "asr/common.h"
#include "asr/utf8.h"

namespace asr {

std::vector<int> CollapsePath(std::span<const int> path, int blank) {
  std::vector<int> out;
  int prev = -1;
  for (int s : path) {
    if (s != prev && s != blank) out.push_back(s);
    prev = s;
  }
  return out;
}

std::string Collapse(std::span<const int> path, const Alphabet& alphabet) {
  return alphabet.Decode(CollapsePath(path, alphabet.BlankIndex()));
}

namespace {

// Blank-interleaved target: even positions blank, odd positions labels.
std::vector<int> Augment(std::span<const int> labels, int blank) {
  std::vector<int> aug(2 * labels.size() + 1, blank);
  for (size_t i = 0; i < labels.size(); i++) aug[2 * i + 1] = labels[i];
  return aug;
}

// Forward (alpha) trellis over the augmented target, log space.
Matrix CtcForward(const Matrix& logprobs, const std::vector<int>& aug) {
  const int T = logprobs.Rows();
  const int S = static_cast<int>(aug.size());
  Matrix a(T, S);
  for (int t = 0; t < T; t++)
    for (int s = 0; s < S; s++) a(t, s) = kLogZero;
  a(0, 0) = logprobs(0, aug[0]);
  if (S > 1) a(0, 1) = logprobs(0, aug[1]);
  for (int t = 1; t < T; t++) {
    for (int s = 0; s < S; s++) {
      double acc = a(t - 1, s);
      if (s >= 1) acc = LogAdd(acc, a(t - 1, s - 1));
      if (s >= 2 && aug[s] != aug[s - 2]) acc = LogAdd(acc, a(t - 1, s - 2));
      a(t, s) = acc == kLogZero ? kLogZero : acc + logprobs(t, aug[s]);
    }
  }
  return a;
}

Matrix CtcBackward(const Matrix& logprobs, const std::vector<int>& aug) {
  const int T = logprobs.Rows();
  const int S = static_cast<int>(aug.size());
  Matrix b(T, S);
  for (int t = 0; t < T; t++)
    for (int s = 0; s < S; s++) b(t, s) = kLogZero;
  b(T - 1, S - 1) = logprobs(T - 1, aug[S - 1]);
  if (S > 1) b(T - 1, S - 2) = logprobs(T - 1, aug[S - 2]);
  for (int t = T - 2; t >= 0; t--) {
    for (int s = S - 1; s >= 0; s--) {
      double acc = b(t + 1, s);
      if (s + 1 < S) acc = LogAdd(acc, b(t + 1, s + 1));
      if (s + 2 < S && aug[s] != aug[s + 2]) acc = LogAdd(acc, b(t + 1, s + 2));
      b(t, s) = acc == kLogZero ? kLogZero : acc + logprobs(t, aug[s]);
    }
  }
  return b;
}

void CheckRows(const Matrix& logprobs) {
  if (logprobs.Rows() < 1 || logprobs.Cols() < 2)
    throw DataError("ctc: log-probability matrix must be at least 1 x 2");
}

}  // namespace

CtcLossResult CtcLoss(const Matrix& logprobs, std::span<const int> labels) {
  CheckRows(logprobs);
  const int T = logprobs.Rows();
  const int K = logprobs.Cols();
  const int blank = K - 1;
  for (int l : labels) {
    if (l < 0 || l >= blank) throw DataError(StrCat("ctc: label ", l, " out of range"));
  }

  std::vector<int> aug = Augment(labels, blank);
  Matrix a = CtcForward(logprobs, aug);
  const int S = static_cast<int>(aug.size());
  double logp = a(T - 1, S - 1);
  if (S > 1) logp = LogAdd(logp, a(T - 1, S - 2));

  CtcLossResult res;
  if (logp == kLogZero) {
    res.loss = std::numeric_limits<double>::infinity();
    res.feasible = false;
  } else {
    res.loss = -logp;
  }
  return res;
}

// The posterior gamma(t, k) = P(path passes symbol k at frame t | target).
// dLoss/dlogprob = -gamma; dLoss/dlogit = softmax - gamma.
static Matrix CtcPosterior(const Matrix& logprobs, std::span<const int> labels, double* loss) {
  CheckRows(logprobs);
  const int T = logprobs.Rows();
  const int K = logprobs.Cols();
  const int blank = K - 1;
  std::vector<int> aug = Augment(labels, blank);
  const int S = static_cast<int>(aug.size());

  Matrix a = CtcForward(logprobs, aug);
  Matrix b = CtcBackward(logprobs, aug);
  double logp = a(T - 1, S - 1);
  if (S > 1) logp = LogAdd(logp, a(T - 1, S - 2));
  if (logp == kLogZero)
    throw DataError(StrCat("ctc: target of length ", labels.size(), " infeasible in ", T,
                           " frames"));
  if (loss) *loss = -logp;

  Matrix gamma(T, K);
  for (int t = 0; t < T; t++) {
    std::vector<double> acc(K, kLogZero);
    for (int s = 0; s < S; s++) {
      // alpha and beta both include logprob(t, aug[s]); divide once.
      double v = a(t, s) + b(t, s) - logprobs(t, aug[s]);
      acc[aug[s]] = LogAdd(acc[aug[s]], v);
    }
    for (int k = 0; k < K; k++)
      gamma(t, k) = acc[k] == kLogZero ? 0.0 : std::exp(acc[k] - logp);
  }
  return gamma;
}

Matrix CtcGrad(const Matrix& logprobs, std::span<const int> labels, double* loss) {
  Matrix gamma = CtcPosterior(logprobs, labels, loss);
  const int T = logprobs.Rows();
  const int K = logprobs.Cols();
  Matrix grad(T, K);
  for (int t = 0; t < T; t++)
    for (int k = 0; k < K; k++) grad(t, k) = std::exp(logprobs(t, k)) - gamma(t, k);
  return grad;
}

Matrix CtcGradLogProbs(const Matrix& logprobs, std::span<const int> labels, double* loss) {
  Matrix gamma = CtcPosterior(logprobs, labels, loss);
  const int T = logprobs.Rows();
  const int K = logprobs.Cols();
  Matrix grad(T, K);
  for (int t = 0; t < T; t++)
    for (int k = 0; k < K; k++) grad(t, k) = -gamma(t, k);
  return grad;
}

std::string GreedyDecode(const Matrix& logprobs, const Alphabet& alphabet) {
  CheckRows(logprobs);
  std::vector<int> path(logprobs.Rows());
  for (int t = 0; t < logprobs.Rows(); t++) {
    const double* row = logprobs.Row(t);
    path[t] = static_cast<int>(std::max_element(row, row + logprobs.Cols()) - row);
  }
  return Collapse(path, alphabet);
}

namespace {

constexpr double kLn10 = 2.302585092994046;

struct PrefixScore {
  double p_blank = kLogZero;     // paths ending in blank (LM folded in)
  double p_nonblank = kLogZero;  // paths ending in the last character
  double lm = 0.0;               // total LM adjustment folded into the above

  double Total() const { return LogAdd(p_blank, p_nonblank); }
};

// Completed nonempty words of a prefix, and the partial word after the last
// space (possibly empty).
void SplitPrefix(const std::string& prefix, std::vector<std::string>* history,
                 std::string* trailing) {
  history->clear();
  history->push_back(kSentStart);
  trailing->clear();
  for (char c : prefix) {
    if (c == ' ') {
      if (!trailing->empty()) history->push_back(*trailing);
      trailing->clear();
    } else {
      *trailing += c;
    }
  }
}

// alpha * ln P_LM(word | history) + beta for completing the prefix's
// trailing word; zero when there is nothing to complete.
double TrailingWordBonus(const std::string& prefix, const NGramModel* lm,
                         const DecoderConfig& cfg) {
  std::vector<std::string> history;
  std::string word;
  SplitPrefix(prefix, &history, &word);
  if (word.empty()) return 0.0;
  double bonus = cfg.beta;
  if (cfg.alpha != 0.0) {
    if (lm == nullptr) throw ConfigError("decode: LM fusion requested without a model");
    bonus += cfg.alpha * kLn10 * lm->LogProb(history, word);
  }
  return bonus;
}

}  // namespace

std::vector<DecodedHyp> BeamSearchDecode(const Matrix& logprobs, const Alphabet& alphabet,
                                         const NGramModel* lm, const DecoderConfig& cfg) {
  CheckRows(logprobs);
  if (cfg.beam_width < 1) throw ConfigError("decode: beam width must be >= 1");
  if (logprobs.Cols() != alphabet.NumLabels())
    throw ConfigError(StrCat("decode: matrix has ", logprobs.Cols(), " labels, alphabet needs ",
                             alphabet.NumLabels()));
  const int T = logprobs.Rows();
  const int K = logprobs.Cols();
  const int blank = K - 1;
  const int space = alphabet.SpaceIndex();

  // std::map keeps prefix iteration deterministic and gives lexicographic
  // tie-breaking for free when sorting by (score, text).
  std::map<std::string, PrefixScore> beam;
  beam[""].p_blank = 0.0;  // empty prefix, probability 1

  std::map<std::string, PrefixScore> next;
  for (int t = 0; t < T; t++) {
    next.clear();
    const double* row = logprobs.Row(t);
    for (const auto& [prefix, score] : beam) {
      const double total = score.Total();
      // Blank keeps the prefix and marks it blank-terminated.
      {
        PrefixScore& ns = next[prefix];
        ns.p_blank = LogAdd(ns.p_blank, total + row[blank]);
        ns.lm = score.lm;
      }
      const char32_t last_cp =
          prefix.empty() ? 0 : Utf8Decode(prefix).back();  // prefixes are short; fine at desk scale
      for (int c = 0; c < blank; c++) {
        const double p = row[c];
        const char32_t cp = alphabet.SymbolCp(c);
        const std::string ext = prefix + alphabet.Symbol(c);
        // Emitting a space completes the trailing word, if any.
        const double bonus = (c == space) ? TrailingWordBonus(prefix, lm, cfg) : 0.0;
        if (!prefix.empty() && cp == last_cp) {
          // Repeated symbol: without an intervening blank it merges.
          PrefixScore& same = next[prefix];
          same.p_nonblank = LogAdd(same.p_nonblank, score.p_nonblank + p);
          same.lm = score.lm;
          PrefixScore& ns = next[ext];
          ns.p_nonblank = LogAdd(ns.p_nonblank, score.p_blank + p + bonus);
          ns.lm = score.lm + bonus;
        } else {
          PrefixScore& ns = next[ext];
          ns.p_nonblank = LogAdd(ns.p_nonblank, total + p + bonus);
          ns.lm = score.lm + bonus;
        }
      }
    }

    // Prune to the beam width by fused score, ties lexicographic.
    if (static_cast<int>(next.size()) > cfg.beam_width) {
      std::vector<std::pair<double, const std::string*>> ranked;
      ranked.reserve(next.size());
      for (const auto& [text, sc] : next) ranked.emplace_back(sc.Total(), &text);
      std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return *a.second < *b.second;
      });
      std::map<std::string, PrefixScore> pruned;
      for (int i = 0; i < cfg.beam_width; i++) pruned[*ranked[i].second] = next[*ranked[i].second];
      next.swap(pruned);
    }
    beam.swap(next);
  }

  // Finalize: the trailing word (if any) still owes its LM adjustment.
  std::vector<DecodedHyp> hyps;
  hyps.reserve(beam.size());
  for (const auto& [prefix, score] : beam) {
    double bonus = TrailingWordBonus(prefix, lm, cfg);
    DecodedHyp h;
    h.text = prefix;
    h.score = score.Total() + bonus;
    h.lm = score.lm + bonus;
    h.acoustic = h.score - h.lm;
    h.word_count = static_cast<int>(Tokenize(prefix).size());
    hyps.push_back(std::move(h));
  }
  std::sort(hyps.begin(), hyps.end(), [](const DecodedHyp& a, const DecodedHyp& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  });
  if (static_cast<int>(hyps.size()) > cfg.beam_width) hyps.resize(cfg.beam_width);
  return hyps;
}

}  // namespace asr
