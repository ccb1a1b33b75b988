// tests/test_ctc.cc

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

#include "asr/common.h"
#include "asr/ctc.h"
#include "doctest.h"
#include "oracles.h"

using namespace asr;

namespace {

// Random stochastic rows in log space.
Matrix RandomLogProbs(int T, int K, Rng* rng) {
  Matrix m(T, K);
  for (int t = 0; t < T; t++) {
    double sum = 0.0;
    std::vector<double> p(K);
    for (int k = 0; k < K; k++) {
      p[k] = -std::log(rng->Uniform() + 1e-12);  // exponential draws
      sum += p[k];
    }
    for (int k = 0; k < K; k++) m(t, k) = std::log(p[k] / sum);
  }
  return m;
}

Matrix FromProbs(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (size_t t = 0; t < rows.size(); t++)
    for (size_t k = 0; k < rows[t].size(); k++) m(static_cast<int>(t), static_cast<int>(k)) = std::log(rows[t][k]);
  return m;
}

Alphabet AbcAlphabet() { return Alphabet({"a", "b", "c", " "}); }
Alphabet TwoAlphabet() { return Alphabet({"a", "b", " "}); }

}  // namespace

TEST_CASE("collapse merges repeats then removes blanks") {
  Alphabet ab = TwoAlphabet();
  const int blank = ab.BlankIndex();  // 3
  CHECK(Collapse(std::vector<int>{0, 0, blank, 1}, ab) == "ab");
  CHECK(Collapse(std::vector<int>{0, blank, 0}, ab) == "aa");
  CHECK(Collapse(std::vector<int>{blank, blank}, ab) == "");
}

TEST_CASE("single-frame loss is the negative log probability") {
  Matrix lp = FromProbs({{0.6, 0.3, 0.1}});  // K=3: a, b, blank
  CtcLossResult res = CtcLoss(lp, std::vector<int>{0});
  CHECK(res.feasible);
  CHECK(std::abs(res.loss - (-std::log(0.6))) < 1e-12);
}

TEST_CASE("loss equals brute-force path enumeration") {
  Rng rng(31);
  for (int trial = 0; trial < 30; trial++) {
    int T = rng.Int(2, 5);
    int K = rng.Int(2, 4);
    Matrix lp = RandomLogProbs(T, K, &rng);
    int len = rng.Int(0, 2);
    std::vector<int> target;
    for (int i = 0; i < len; i++) target.push_back(rng.Int(0, K - 2));
    double mass = oracle::CtcBruteForce(lp, target);
    CtcLossResult res = CtcLoss(lp, target);
    if (mass == 0.0) {
      CHECK(!res.feasible);
    } else {
      REQUIRE(res.feasible);
      CHECK(std::abs(res.loss - (-std::log(mass))) < 1e-10);
    }
  }
}

TEST_CASE("repeat labels need a separating frame") {
  Rng rng(5);
  Matrix lp = RandomLogProbs(2, 3, &rng);
  CtcLossResult res = CtcLoss(lp, std::vector<int>{0, 0});
  CHECK(!res.feasible);
  CHECK(std::isinf(res.loss));
  CHECK_THROWS_AS(CtcGrad(lp, std::vector<int>{0, 0}), DataError);
}

TEST_CASE("gradient wrt logits matches finite differences") {
  Rng rng(41);
  const int T = 5, K = 4;
  Matrix logits(T, K);
  for (int t = 0; t < T; t++)
    for (int k = 0; k < K; k++) logits(t, k) = rng.Uniform(-1.0, 1.0);
  std::vector<int> target = {1, 0};

  auto loss_of = [&](const Matrix& lg) {
    Matrix lp(T, K);
    for (int t = 0; t < T; t++) {
      double mx = lg(t, 0);
      for (int k = 1; k < K; k++) mx = std::max(mx, lg(t, k));
      double lse = 0.0;
      for (int k = 0; k < K; k++) lse += std::exp(lg(t, k) - mx);
      lse = mx + std::log(lse);
      for (int k = 0; k < K; k++) lp(t, k) = lg(t, k) - lse;
    }
    return CtcLoss(lp, target).loss;
  };

  Matrix lp(T, K);
  for (int t = 0; t < T; t++) {
    double mx = logits(t, 0);
    for (int k = 1; k < K; k++) mx = std::max(mx, logits(t, k));
    double lse = 0.0;
    for (int k = 0; k < K; k++) lse += std::exp(logits(t, k) - mx);
    lse = mx + std::log(lse);
    for (int k = 0; k < K; k++) lp(t, k) = logits(t, k) - lse;
  }
  Matrix grad = CtcGrad(lp, target);

  const double eps = 1e-6;
  for (int t = 0; t < T; t++) {
    double row_sum = 0.0;
    for (int k = 0; k < K; k++) {
      Matrix up = logits, down = logits;
      up(t, k) += eps;
      down(t, k) -= eps;
      double fd = (loss_of(up) - loss_of(down)) / (2.0 * eps);
      double denom = std::max({std::abs(fd), std::abs(grad(t, k)), 1e-4});
      CHECK(std::abs(fd - grad(t, k)) / denom < 1e-5);
      row_sum += grad(t, k);
    }
    CHECK(std::abs(row_sum) < 1e-9);  // softmax minus a distribution
  }
}

TEST_CASE("gradient vanishes at a concentrated optimum") {
  // All mass on one path spelling "ab" over 4 frames: a, b, blank, blank.
  const double tiny = 1e-12;
  auto row = [&](int hot, int K) {
    std::vector<double> r(K, tiny);
    r[hot] = 1.0 - tiny * (K - 1);
    return r;
  };
  Matrix lp = FromProbs({row(0, 3), row(1, 3), row(2, 3), row(2, 3)});
  Matrix grad = CtcGrad(lp, std::vector<int>{0, 1});
  double norm = 0.0;
  for (int t = 0; t < grad.Rows(); t++)
    for (int k = 0; k < grad.Cols(); k++) norm += grad(t, k) * grad(t, k);
  CHECK(std::sqrt(norm) < 1e-6);
}

TEST_CASE("string masses sum to one over all producible strings") {
  Rng rng(59);
  Matrix lp = RandomLogProbs(3, 3, &rng);
  auto masses = oracle::CtcStringMasses(lp);
  double total = 0.0;
  for (const auto& [labels, mass] : masses) {
    CtcLossResult res = CtcLoss(lp, labels);
    REQUIRE(res.feasible);
    CHECK(std::abs(std::exp(-res.loss) - mass) < 1e-10);
    total += std::exp(-res.loss);
  }
  CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("loss is invariant under consistent relabeling") {
  Rng rng(61);
  Matrix lp = RandomLogProbs(5, 4, &rng);  // symbols 0,1,2 + blank
  std::vector<int> target = {0, 2, 1};
  double base = CtcLoss(lp, target).loss;
  // Swap symbols 0 and 2 everywhere.
  Matrix swapped(5, 4);
  for (int t = 0; t < 5; t++) {
    swapped(t, 0) = lp(t, 2);
    swapped(t, 2) = lp(t, 0);
    swapped(t, 1) = lp(t, 1);
    swapped(t, 3) = lp(t, 3);
  }
  std::vector<int> renamed = {2, 0, 1};
  CHECK(std::abs(CtcLoss(swapped, renamed).loss - base) < 1e-12);
}

TEST_CASE("greedy decoding is per-frame argmax plus collapse") {
  Alphabet ab = TwoAlphabet();
  Matrix lp = FromProbs({{0.8, 0.1, 0.05, 0.05},
                         {0.05, 0.05, 0.1, 0.8},
                         {0.1, 0.8, 0.05, 0.05}});
  CHECK(GreedyDecode(lp, ab) == "ab");
  Matrix blanks = FromProbs({{0.1, 0.1, 0.1, 0.7}, {0.2, 0.1, 0.1, 0.6}});
  CHECK(GreedyDecode(blanks, ab) == "");
}

TEST_CASE("width-1 beam search with no LM matches greedy on unambiguous input") {
  Rng rng(71);
  Alphabet ab = TwoAlphabet();
  for (int trial = 0; trial < 20; trial++) {
    Matrix lp(4, 4);
    for (int t = 0; t < 4; t++) {
      // One clearly dominant symbol per frame.
      int hot = rng.Int(0, 3);
      for (int k = 0; k < 4; k++) lp(t, k) = (k == hot) ? std::log(0.97) : std::log(0.01);
    }
    DecoderConfig cfg;
    cfg.beam_width = 1;
    cfg.alpha = 0.0;
    cfg.beta = 0.0;
    auto hyps = BeamSearchDecode(lp, ab, nullptr, cfg);
    REQUIRE(!hyps.empty());
    CHECK(hyps[0].text == GreedyDecode(lp, ab));
  }
}

TEST_CASE("unpruned beam search equals exhaustive fused search") {
  Rng rng(83);
  Alphabet ab = AbcAlphabet();
  NGramModel lm = TrainKneserNeyText({"ab c", "c ab", "a b", "cab a"}, 2);
  for (int trial = 0; trial < 25; trial++) {
    int T = rng.Int(2, 5);
    Matrix lp = RandomLogProbs(T, ab.NumLabels(), &rng);
    DecoderConfig cfg;
    cfg.beam_width = 4096;
    cfg.alpha = (trial % 2 == 0) ? 0.0 : 1.2;
    cfg.beta = (trial % 3 == 0) ? 0.0 : 0.6;
    auto hyps = BeamSearchDecode(lp, ab, &lm, cfg);
    REQUIRE(!hyps.empty());
    auto best = oracle::ExhaustiveDecode(lp, ab, &lm, cfg.alpha, cfg.beta);
    CHECK(hyps[0].text == best.text);
    CHECK(std::abs(hyps[0].score - best.score) < 1e-9);
    // Ranking is monotone non-increasing.
    for (size_t i = 1; i < hyps.size(); i++) CHECK(hyps[i - 1].score >= hyps[i].score - 1e-12);
  }
}

TEST_CASE("language model fusion separates acoustically tied homophones") {
  Alphabet ab = AbcAlphabet();
  // Probabilities tuned so P_ctc("abc") slightly exceeds P_ctc("ab c"):
  // frame 2 splits between space and c, frame 3 between c and blank.
  const double tiny = 1e-9;
  auto row = [&](std::initializer_list<std::pair<int, double>> hot) {
    std::vector<double> r(5, tiny);
    for (auto [k, p] : hot) r[k] = p;
    return r;
  };
  Matrix lp = FromProbs({
      row({{0, 1.0 - 4 * tiny}}),                 // a
      row({{1, 1.0 - 4 * tiny}}),                 // b
      row({{3, 0.5}, {2, 0.45}, {4, 0.05}}),      // space vs c (blank weak)
      row({{2, 0.9}, {4, 0.1}}),                  // c dominant, blank weak
  });
  // Acoustic masses: "abc" = 0.45*(0.9+0.1) + 0.05*0.9 = 0.495 edges out
  // "ab c" = 0.5*0.9 = 0.45; "ab " and "ab" are starved of blank mass.
  NGramModel lm = TrainKneserNeyText({"ab c", "ab c", "ab c", "ab c", "abc"}, 2);
  DecoderConfig off;
  off.beam_width = 512;
  off.alpha = 0.0;
  off.beta = 0.0;
  auto plain = BeamSearchDecode(lp, ab, &lm, off);
  CHECK(plain[0].text == "abc");

  DecoderConfig fused = off;
  fused.alpha = 2.0;
  fused.beta = 0.0;
  auto with_lm = BeamSearchDecode(lp, ab, &lm, fused);
  CHECK(with_lm[0].text == "ab c");
}

TEST_CASE("pruned beams never beat the unpruned search and converge to it") {
  // Strict monotonicity of the top score in the beam width does not hold
  // for merging prefix beam search (extra survivors spawn successors that
  // can evict a narrow beam's winner), so the testable property is the
  // upper bound: pruning can only lose probability mass.
  Rng rng(97);
  Alphabet ab = AbcAlphabet();
  NGramModel lm = TrainKneserNeyText({"a b", "b c", "c a"}, 2);
  for (int trial = 0; trial < 10; trial++) {
    Matrix lp = RandomLogProbs(6, ab.NumLabels(), &rng);
    DecoderConfig cfg;
    cfg.alpha = 0.8;
    cfg.beta = 0.3;
    cfg.beam_width = 1 << 14;  // no pruning at T = 6, |alphabet| = 3
    auto unpruned = BeamSearchDecode(lp, ab, &lm, cfg);
    auto oracle_best = oracle::ExhaustiveDecode(lp, ab, &lm, cfg.alpha, cfg.beta);
    CHECK(unpruned[0].text == oracle_best.text);
    CHECK(std::abs(unpruned[0].score - oracle_best.score) < 1e-9);
    for (int width : {1, 2, 4, 8, 16, 64, 256}) {
      cfg.beam_width = width;
      auto hyps = BeamSearchDecode(lp, ab, &lm, cfg);
      CHECK(hyps[0].score <= unpruned[0].score + 1e-12);
    }
  }
}

TEST_CASE("decoder validates its configuration") {
  Alphabet ab = TwoAlphabet();
  Rng rng(3);
  Matrix lp = RandomLogProbs(3, ab.NumLabels(), &rng);
  DecoderConfig cfg;
  cfg.beam_width = 0;
  CHECK_THROWS_AS(BeamSearchDecode(lp, ab, nullptr, cfg), ConfigError);
  cfg.beam_width = 4;
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(BeamSearchDecode(lp, ab, nullptr, cfg), ConfigError);  // no LM
  Matrix wrong(3, 2);
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(BeamSearchDecode(wrong, ab, nullptr, cfg), ConfigError);
}
