// asr/lm.cc

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

#include "asr/lm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "asr/common.h"

namespace asr {

std::vector<std::string> Tokenize(const std::string& sentence) {
  std::vector<std::string> out;
  std::istringstream is(sentence);
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

namespace {

std::string JoinGram(const std::vector<std::string>& words, size_t begin, size_t len) {
  std::string key;
  for (size_t i = 0; i < len; i++) {
    if (i) key += ' ';
    key += words[begin + i];
  }
  return key;
}

std::string StripFirstWord(const std::string& gram) {
  size_t sp = gram.find(' ');
  return sp == std::string::npos ? std::string() : gram.substr(sp + 1);
}

std::string DropLastWord(const std::string& gram) {
  size_t sp = gram.rfind(' ');
  return sp == std::string::npos ? std::string() : gram.substr(0, sp);
}

std::string LastWord(const std::string& gram) {
  size_t sp = gram.rfind(' ');
  return sp == std::string::npos ? gram : gram.substr(sp + 1);
}

bool StartsWithSentStart(const std::string& gram) {
  return gram.compare(0, kSentStart.size(), kSentStart) == 0 &&
         (gram.size() == kSentStart.size() || gram[kSentStart.size()] == ' ');
}

double Log10Safe(double p) { return p > 0.0 ? std::log10(p) : -99.0; }

}  // namespace

double NGramModel::LogProb(const std::vector<std::string>& context,
                           const std::string& word) const {
  return LogProbCapped(context, word, order);
}

double NGramModel::LogProbCapped(const std::vector<std::string>& context,
                                 const std::string& word, int max_order) const {
  // Use at most max_order-1 words of context.
  std::vector<std::string> ctx;
  size_t take = std::min(context.size(), static_cast<size_t>(max_order > 0 ? max_order - 1 : 0));
  for (size_t i = context.size() - take; i < context.size(); i++) ctx.push_back(context[i]);

  double bow_acc = 0.0;
  for (size_t k = ctx.size() + 1; k >= 1; k--) {
    std::string key;
    for (size_t i = ctx.size() - (k - 1); i < ctx.size(); i++) key += ctx[i] + ' ';
    std::string gram = key + word;
    auto it = prob.find(gram);
    if (it != prob.end() && it->second > -98.0) return bow_acc + it->second;
    if (k >= 2) {
      std::string ctx_key = key;
      ctx_key.pop_back();  // trailing space
      auto bo = backoff.find(ctx_key);
      if (bo != backoff.end()) bow_acc += bo->second;
    } else {
      // Unigram level: unknown word falls through to <unk>.
      auto unk = prob.find(kUnknown);
      if (unk != prob.end()) return bow_acc + unk->second;
      throw Error("lm: model has no <unk> unigram");
    }
  }
  throw Error("lm: unreachable");
}

double NGramModel::ScoreSentence(const std::string& sentence) const {
  std::vector<std::string> words = Tokenize(sentence);
  std::vector<std::string> context = {kSentStart};
  double total = 0.0;
  for (const auto& w : words) {
    total += LogProb(context, w);
    context.push_back(prob.count(w) ? w : kUnknown);
  }
  total += LogProb(context, kSentEnd);
  return total;
}

double NGramModel::Perplexity(const std::vector<std::string>& sentences) const {
  double total = 0.0;
  int64_t tokens = 0;
  for (const auto& s : sentences) {
    std::vector<std::string> words = Tokenize(s);
    total += ScoreSentence(s);
    tokens += static_cast<int64_t>(words.size()) + 1;  // + </s>
  }
  if (tokens == 0) throw DataError("perplexity: empty corpus");
  return std::pow(10.0, -total / static_cast<double>(tokens));
}

std::vector<std::string> NGramModel::PredictableVocab() const {
  std::vector<std::string> out;
  for (const auto& w : vocab)
    if (w != kSentStart) out.push_back(w);
  return out;
}

NGramModel TrainKneserNey(const std::vector<std::vector<std::string>>& sentences, int order) {
  if (order < 1 || order > 5) throw ConfigError(StrCat("lm: order ", order, " outside 1..5"));
  if (sentences.empty()) throw DataError("lm: empty training corpus");
  bool any = false;
  for (const auto& s : sentences) any = any || !s.empty();
  if (!any) throw DataError("lm: training corpus has no tokens");

  // Raw counts at every order, over <s> w1..wn </s> padded sentences.
  std::vector<std::map<std::string, int64_t>> raw(order + 1);
  for (const auto& sent : sentences) {
    std::vector<std::string> padded;
    padded.reserve(sent.size() + 2);
    padded.push_back(kSentStart);
    for (const auto& w : sent) {
      if (w == kSentStart || w == kSentEnd || w == kUnknown)
        throw DataError(StrCat("lm: reserved token '", w, "' in training text"));
      padded.push_back(w);
    }
    padded.push_back(kSentEnd);
    for (int k = 1; k <= order; k++) {
      for (size_t i = 0; i + k <= padded.size(); i++) {
        // No n-gram ends in <s>; with <s> only sentence-initial this means
        // skipping the length-1 <s> gram and nothing else.
        if (padded[i + k - 1] == kSentStart) continue;
        raw[k][JoinGram(padded, i, k)]++;
      }
    }
  }

  // Continuation counts: distinct left-extensions, from (k+1)-gram types.
  std::vector<std::map<std::string, int64_t>> cont(order);
  for (int k = 1; k < order; k++) {
    for (const auto& [gram, unused] : raw[k + 1]) {
      (void)unused;
      cont[k][StripFirstWord(gram)]++;
    }
  }

  // Effective counts per order: highest order raw; lower orders continuation
  // except <s>-initial grams which have no left-extensions.
  auto effective = [&](int k, const std::string& gram) -> int64_t {
    if (k == order || StartsWithSentStart(gram)) {
      auto it = raw[k].find(gram);
      return it == raw[k].end() ? 0 : it->second;
    }
    auto it = cont[k].find(gram);
    return it == cont[k].end() ? 0 : it->second;
  };

  // Grams that receive explicit entries at order k.
  auto gram_set = [&](int k) {
    std::set<std::string> grams;
    for (const auto& [g, unused] : raw[k]) {
      (void)unused;
      if (effective(k, g) > 0) grams.insert(g);
    }
    return grams;
  };

  // Absolute discount per order from count-of-count statistics.
  std::vector<double> discount(order + 1, 0.0);
  for (int k = 1; k <= order; k++) {
    int64_t n1 = 0, n2 = 0;
    for (const auto& [g, unused] : raw[k]) {
      (void)unused;
      int64_t c = effective(k, g);
      if (c == 1) n1++;
      if (c == 2) n2++;
    }
    // Degenerate count-of-counts (no singletons) would disable smoothing
    // entirely; fall back to a conventional constant.
    discount[k] = (n1 > 0) ? static_cast<double>(n1) / (n1 + 2.0 * n2) : 0.5;
  }

  NGramModel model;
  model.order = order;

  // Vocabulary: all observed words plus the reserved tokens.
  std::set<std::string> vocab_set;
  for (const auto& [g, unused] : raw[1]) {
    (void)unused;
    vocab_set.insert(g);
  }
  vocab_set.insert(kSentStart);
  vocab_set.insert(kSentEnd);
  vocab_set.insert(kUnknown);
  model.vocab.assign(vocab_set.begin(), vocab_set.end());
  const double uniform = 1.0 / static_cast<double>(vocab_set.size() - 1);  // excludes <s>

  // Unigram level: interpolate the continuation distribution with uniform.
  {
    const double d = discount[1];
    double total = 0.0;
    int64_t types = 0;
    std::set<std::string> unigrams = gram_set(1);
    for (const auto& g : unigrams) {
      total += static_cast<double>(effective(1, g));
      types++;
    }
    if (total <= 0.0) throw DataError("lm: no unigram mass");
    const double lambda = d * static_cast<double>(types) / total;
    for (const auto& g : unigrams) {
      double p = std::max(static_cast<double>(effective(1, g)) - d, 0.0) / total +
                 lambda * uniform;
      model.prob[g] = Log10Safe(p);
    }
    model.prob[kUnknown] = Log10Safe(lambda * uniform);
    model.prob[kSentStart] = -99.0;  // never predicted; placeholder entry
  }

  // Higher orders, bottom-up so interpolation can query the lower level.
  for (int k = 2; k <= order; k++) {
    // Group grams by context and accumulate denominators.
    struct CtxStat {
      double total = 0.0;
      int64_t distinct = 0;
    };
    std::map<std::string, CtxStat> ctx_stats;
    std::set<std::string> grams = gram_set(k);
    for (const auto& g : grams) {
      auto& st = ctx_stats[DropLastWord(g)];
      st.total += static_cast<double>(effective(k, g));
      st.distinct++;
    }
    const double d = discount[k];
    for (const auto& g : grams) {
      std::string ctx = DropLastWord(g);
      std::string w = LastWord(g);
      const auto& st = ctx_stats.at(ctx);
      double lambda = d * static_cast<double>(st.distinct) / st.total;
      std::vector<std::string> lower_ctx = Tokenize(StripFirstWord(ctx));
      double p_lower = std::pow(10.0, model.LogProbCapped(lower_ctx, w, k - 1));
      double p = std::max(static_cast<double>(effective(k, g)) - d, 0.0) / st.total +
                 lambda * p_lower;
      model.prob[g] = Log10Safe(p);
    }
    for (const auto& [ctx, st] : ctx_stats) {
      double lambda = d * static_cast<double>(st.distinct) / st.total;
      model.backoff[ctx] = Log10Safe(lambda);
      if (!model.prob.count(ctx)) model.prob[ctx] = -99.0;  // context-only entry
    }
  }
  return model;
}

NGramModel TrainKneserNeyText(const std::vector<std::string>& lines, int order) {
  std::vector<std::vector<std::string>> sentences;
  for (const auto& line : lines) {
    std::vector<std::string> toks = Tokenize(line);
    if (!toks.empty()) sentences.push_back(std::move(toks));
  }
  return TrainKneserNey(sentences, order);
}

namespace {

std::string FormatLog10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int GramOrder(const std::string& gram) {
  return 1 + static_cast<int>(std::count(gram.begin(), gram.end(), ' '));
}

}  // namespace

std::string ExportArpa(const NGramModel& model) {
  if (model.order < 1) throw Error("arpa: model has no order");

  std::vector<std::vector<std::string>> by_order(model.order + 1);
  for (const auto& [gram, unused] : model.prob) {
    (void)unused;
    int k = GramOrder(gram);
    if (k < 1 || k > model.order) throw Error(StrCat("arpa: gram '", gram, "' outside order"));
    by_order[k].push_back(gram);
  }
  for (auto& v : by_order) std::sort(v.begin(), v.end());

  std::ostringstream os;
  if (model.has_alphabet_hash) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(model.alphabet_hash));
    os << "alphabet_fnv64 " << buf << "\n\n";
  }
  os << "\\data\\\n";
  for (int k = 1; k <= model.order; k++)
    os << "ngram " << k << "=" << by_order[k].size() << "\n";
  os << "\n";
  for (int k = 1; k <= model.order; k++) {
    os << "\\" << k << "-grams:\n";
    for (const auto& gram : by_order[k]) {
      os << FormatLog10(model.prob.at(gram)) << "\t" << gram;
      auto bo = model.backoff.find(gram);
      if (bo != model.backoff.end()) os << "\t" << FormatLog10(bo->second);
      os << "\n";
    }
    os << "\n";
  }
  os << "\\end\\\n";
  return os.str();
}

NGramModel ImportArpa(const std::string& text) {
  NGramModel model;
  std::istringstream is(text);
  std::string line;

  // Preamble: anything before \data\ is commentary, except our hash stamp.
  bool found_data = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("alphabet_fnv64 ", 0) == 0) {
      model.alphabet_hash = std::stoull(line.substr(15), nullptr, 16);
      model.has_alphabet_hash = true;
    }
    if (line == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw FormatError("arpa: missing \\data\\ section");

  std::vector<int64_t> declared(1, 0);  // declared[k] for k >= 1
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) break;
    int k = 0;
    long long n = 0;
    if (std::sscanf(line.c_str(), "ngram %d=%lld", &k, &n) != 2 || k < 1)
      throw FormatError(StrCat("arpa: malformed count line '", line, "'"));
    if (static_cast<int>(declared.size()) <= k) declared.resize(k + 1, -1);
    declared[k] = n;
  }
  model.order = static_cast<int>(declared.size()) - 1;
  if (model.order < 1) throw FormatError("arpa: no ngram counts declared");

  std::set<std::string> vocab_set;
  int expected_section = 1;
  bool saw_end = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "\\end\\") {
      saw_end = true;
      break;
    }
    int k = 0;
    if (std::sscanf(line.c_str(), "\\%d-grams:", &k) == 1) {
      if (k != expected_section)
        throw FormatError(StrCat("arpa: unexpected section for order ", k));
      int64_t listed = 0;
      while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        std::istringstream ls(line);
        double logp;
        if (!(ls >> logp)) throw FormatError(StrCat("arpa: bad entry '", line, "'"));
        std::vector<std::string> fields;
        std::string tok;
        while (ls >> tok) fields.push_back(tok);
        bool has_backoff = false;
        double bow = 0.0;
        if (static_cast<int>(fields.size()) == k + 1) {
          // Trailing numeric field is the backoff weight.
          try {
            size_t used = 0;
            bow = std::stod(fields.back(), &used);
            if (used != fields.back().size()) throw std::invalid_argument("trailing");
            has_backoff = true;
            fields.pop_back();
          } catch (const std::exception&) {
            throw FormatError(StrCat("arpa: bad backoff in '", line, "'"));
          }
        }
        if (static_cast<int>(fields.size()) != k)
          throw FormatError(StrCat("arpa: expected ", k, " words in '", line, "'"));
        std::string gram;
        for (int i = 0; i < k; i++) {
          if (i) gram += ' ';
          gram += fields[i];
          vocab_set.insert(fields[i]);
        }
        model.prob[gram] = logp;
        if (has_backoff) model.backoff[gram] = bow;
        listed++;
      }
      if (declared[k] >= 0 && listed != declared[k])
        throw FormatError(StrCat("arpa: order ", k, " lists ", listed, " entries, declared ",
                                 declared[k]));
      expected_section++;
      continue;
    }
    throw FormatError(StrCat("arpa: unexpected line '", line, "'"));
  }
  if (!saw_end) throw FormatError("arpa: missing \\end\\");
  if (expected_section != model.order + 1)
    throw FormatError("arpa: missing n-gram sections");
  vocab_set.insert(kSentStart);
  vocab_set.insert(kSentEnd);
  vocab_set.insert(kUnknown);
  model.vocab.assign(vocab_set.begin(), vocab_set.end());
  return model;
}

void ExportArpaFile(const std::string& path, const NGramModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(StrCat("arpa: cannot write ", path));
  out << ExportArpa(model);
  if (!out) throw Error(StrCat("arpa: short write to ", path));
}

NGramModel ImportArpaFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("arpa: cannot open ", path));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ImportArpa(text);
}

}  // namespace asr
