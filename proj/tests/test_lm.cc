// tests/test_lm.cc

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
#include <set>

#include "asr/common.h"
#include "asr/lm.h"
#include "doctest.h"

using namespace asr;

namespace {

NGramModel ToyBigram() {
  return TrainKneserNeyText({"a b", "a c", "b a"}, 2);
}

// Sum of P(w | context) over the predictable vocabulary via the full
// backoff query.
double ContextMass(const NGramModel& m, const std::vector<std::string>& context) {
  double sum = 0.0;
  for (const auto& w : m.PredictableVocab()) sum += std::pow(10.0, m.LogProb(context, w));
  return sum;
}

// All observed contexts of every order (empty context included).
std::vector<std::vector<std::string>> AllContexts(const NGramModel& m) {
  std::set<std::vector<std::string>> ctxs;
  ctxs.insert({});
  for (const auto& [gram, unused] : m.prob) {
    (void)unused;
    std::vector<std::string> words = Tokenize(gram);
    if (words.size() < static_cast<size_t>(m.order)) ctxs.insert(words);
    words.pop_back();
    if (!words.empty()) ctxs.insert(words);
  }
  return {ctxs.begin(), ctxs.end()};
}

}  // namespace

TEST_CASE("toy-corpus Kneser-Ney probabilities match hand-computed constants") {
  NGramModel m = ToyBigram();
  // Corpus {"a b", "a c", "b a"}: bigram discount 7/9, unigram discount 1/5,
  // continuation unigram P(b) = 9/40 + (1/10)(1/5) = 49/200, and
  // P(b|a) = (1 - 7/9)/3 + (7/9)(3/3)(49/200) = 1429/5400.
  CHECK(std::abs(std::pow(10.0, m.LogProb({"a"}, "b")) - 1429.0 / 5400.0) < 1e-9);
  // Sentence-initial context keeps raw counts: P(a|<s>) = 2886/5400.
  CHECK(std::abs(std::pow(10.0, m.LogProb({kSentStart}, "a")) - 2886.0 / 5400.0) < 1e-9);
  // Unigram continuation value.
  CHECK(std::abs(std::pow(10.0, m.LogProb({}, "b")) - 49.0 / 200.0) < 1e-9);
}

TEST_CASE("every context of every order normalizes to one") {
  for (int order = 1; order <= 4; order++) {
    NGramModel m = TrainKneserNeyText(
        {"a b c", "a b d", "b c a", "d a b c", "c c d", "a b", "d", "b a c d a"}, order);
    for (const auto& ctx : AllContexts(m)) {
      CHECK(std::abs(ContextMass(m, ctx) - 1.0) < 1e-6);
    }
    // An unseen context backs off and still normalizes.
    CHECK(std::abs(ContextMass(m, {"zzz"}) - 1.0) < 1e-6);
  }
}

TEST_CASE("unseen words in a seen context get positive probability") {
  NGramModel m = ToyBigram();
  CHECK(m.LogProb({"a"}, "zzz") > -99.0);
  CHECK(std::pow(10.0, m.LogProb({"a"}, "zzz")) > 0.0);
  // d is unseen entirely; c never follows b.
  CHECK(std::pow(10.0, m.LogProb({"b"}, "c")) > 0.0);
}

TEST_CASE("ARPA export/import round-trips scores within 1e-9") {
  NGramModel m = TrainKneserNeyText({"a b c", "c b a", "a a b", "b c"}, 3);
  m.alphabet_hash = 0x1234abcd5678ef00ULL;
  m.has_alphabet_hash = true;
  std::string arpa = ExportArpa(m);
  NGramModel rt = ImportArpa(arpa);
  CHECK(rt.order == m.order);
  CHECK(rt.has_alphabet_hash);
  CHECK(rt.alphabet_hash == m.alphabet_hash);
  for (const std::string& s : std::vector<std::string>{"a b c", "c c c", "a", "b a zzz", ""}) {
    CHECK(std::abs(rt.ScoreSentence(s) - m.ScoreSentence(s)) < 1e-9);
  }
  // Determinism: exporting the same model twice is byte-identical.
  CHECK(ExportArpa(m) == arpa);
  CHECK(ExportArpa(rt) == arpa);
}

TEST_CASE("ARPA counts section matches the listed entries") {
  NGramModel m = ToyBigram();
  std::string arpa = ExportArpa(m);
  // Parse the declared count and count the actual lines per section.
  std::istringstream is(arpa);
  std::string line;
  int declared1 = -1, declared2 = -1;
  while (std::getline(is, line)) {
    std::sscanf(line.c_str(), "ngram 1=%d", &declared1);
    if (std::sscanf(line.c_str(), "ngram 2=%d", &declared2) == 1) break;
  }
  int listed1 = 0, listed2 = 0;
  int section = 0;
  while (std::getline(is, line)) {
    if (line == "\\1-grams:") {
      section = 1;
      continue;
    }
    if (line == "\\2-grams:") {
      section = 2;
      continue;
    }
    if (line.empty() || line == "\\end\\") {
      section = 0;
      continue;
    }
    if (section == 1) listed1++;
    if (section == 2) listed2++;
  }
  CHECK(declared1 == listed1);
  CHECK(declared2 == listed2);
}

TEST_CASE("ARPA import rejects count mismatches and malformed layouts") {
  NGramModel m = ToyBigram();
  std::string arpa = ExportArpa(m);
  size_t pos = arpa.find("ngram 2=");
  std::string corrupted = arpa.substr(0, pos) + "ngram 2=99\n" +
                          arpa.substr(arpa.find('\n', pos) + 1);
  CHECK_THROWS_AS(ImportArpa(corrupted), FormatError);
  CHECK_THROWS_AS(ImportArpa("no data section here"), FormatError);
  std::string no_end = arpa.substr(0, arpa.find("\\end\\"));
  CHECK_THROWS_AS(ImportArpa(no_end), FormatError);
}

TEST_CASE("a uniform unigram model has perplexity exactly V") {
  // Five predictable words, each with probability 1/5.
  NGramModel m;
  m.order = 1;
  const double lp = std::log10(1.0 / 5.0);
  for (const std::string& w : std::vector<std::string>{"a", "b", "c", kSentEnd, kUnknown})
    m.prob[w] = lp;
  m.vocab = {kSentEnd, kSentStart, kUnknown, "a", "b", "c"};
  double pp = m.Perplexity({"a b", "c a", "b"});
  CHECK(std::abs(pp - 5.0) < 1e-9);
}

TEST_CASE("sentence scores decompose by the chain rule") {
  NGramModel m = ToyBigram();
  double direct = m.ScoreSentence("a b");
  double chained = m.LogProb({kSentStart}, "a") + m.LogProb({kSentStart, "a"}, "b") +
                   m.LogProb({kSentStart, "a", "b"}, kSentEnd);
  CHECK(std::abs(direct - chained) < 1e-12);
}

TEST_CASE("training-corpus perplexity beats the uniform bound") {
  NGramModel m = ToyBigram();
  double pp = m.Perplexity({"a b", "a c", "b a"});
  CHECK(pp <= 5.0 + 1e-9);  // uniform over the 5-word predictable vocab
}

TEST_CASE("adding a sentence never makes that sentence less likely") {
  std::vector<std::string> corpus = {"a b", "a c", "b a"};
  for (const std::string& s : std::vector<std::string>{"a b", "b c", "c a b"}) {
    NGramModel before = TrainKneserNeyText(corpus, 2);
    std::vector<std::string> plus = corpus;
    plus.push_back(s);
    NGramModel after = TrainKneserNeyText(plus, 2);
    CHECK(after.ScoreSentence(s) >= before.ScoreSentence(s) - 1e-12);
  }
}

TEST_CASE("training rejects bad inputs") {
  CHECK_THROWS_AS(TrainKneserNeyText({}, 2), DataError);
  CHECK_THROWS_AS(TrainKneserNeyText({"", "  "}, 2), DataError);
  CHECK_THROWS_AS(TrainKneserNeyText({"a b"}, 0), ConfigError);
  CHECK_THROWS_AS(TrainKneserNeyText({"a b"}, 6), ConfigError);
  CHECK_THROWS_AS(TrainKneserNeyText({"a <s> b"}, 2), DataError);
}

TEST_CASE("OOV words score through the unknown token") {
  NGramModel m = ToyBigram();
  double s = m.ScoreSentence("qqq a");
  CHECK(std::isfinite(s));
  CHECK(s < 0.0);
}
