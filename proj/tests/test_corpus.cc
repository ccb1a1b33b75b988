// tests/test_corpus.cc

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
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>

#include "asr/common.h"
#include "asr/corpus.h"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace asr;

namespace {

struct TempCorpus {
  fs::path dir;
  TempCorpus() {
    dir = fs::temp_directory_path() / ("asrkit_corpus_" + std::to_string(Rng(clock()).Raw()));
    fs::create_directories(dir / "audio");
  }
  ~TempCorpus() { fs::remove_all(dir); }
  void Touch(const std::string& rel) { std::ofstream((dir / rel).string()) << "x"; }
  std::string ManifestWith(const std::vector<std::string>& rows) {
    fs::path p = dir / "manifest.tsv";
    std::ofstream out(p.string());
    out << kManifestHeader << "\n";
    for (const auto& r : rows) out << r << "\n";
    return p.string();
  }
};

std::vector<ManifestEntry> SyntheticEntries(int n) {
  std::vector<ManifestEntry> entries(n);
  for (int i = 0; i < n; i++) {
    entries[i].id = StrCat("utt", i);
    entries[i].audio_path = StrCat("audio/utt", i, ".wav");
    entries[i].duration = 2.0 + 0.01 * i;
    entries[i].transcript = "x";
  }
  return entries;
}

}  // namespace

TEST_CASE("manifests round-trip and accumulate duration") {
  TempCorpus tmp;
  tmp.Touch("audio/a.wav");
  tmp.Touch("audio/b.wav");
  tmp.Touch("audio/c.wav");
  std::string path = tmp.ManifestWith({
      "a\taudio/a.wav\t2.500\ttext a\tmsa",
      "b\taudio/b.wav\t3.000\ttext b\t",
      "c\taudio/c.wav\t4.250\ttext c\tgulf",
  });
  ManifestLoad load = LoadManifest(path);
  REQUIRE(load.entries.size() == 3);
  CHECK(load.total_duration == doctest::Approx(9.75));
  CHECK(load.entries[1].dialect.empty());

  SaveManifest((tmp.dir / "copy.tsv").string(), load.entries);
  ManifestLoad copy = LoadManifest((tmp.dir / "copy.tsv").string(),
                                   {.check_files = false});
  REQUIRE(copy.entries.size() == 3);
  CHECK(copy.entries[2].transcript == "text c");
}

TEST_CASE("manifest validation reports every bad row at once") {
  TempCorpus tmp;
  tmp.Touch("audio/a.wav");
  std::string path = tmp.ManifestWith({
      "a\taudio/a.wav\t2.500\tok\t",
      "a\taudio/a.wav\t2.500\tduplicate id\t",
      "b\taudio/missing.wav\t2.000\tmissing file\t",
      "c\taudio/a.wav\t0\tzero duration\t",
  });
  try {
    LoadManifest(path);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    std::string msg = e.what();
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("missing audio file") != std::string::npos);
    CHECK(msg.find("non-positive duration") != std::string::npos);
  }
}

TEST_CASE("manifest requires the exact header") {
  TempCorpus tmp;
  fs::path p = tmp.dir / "bad.tsv";
  std::ofstream(p.string()) << "id\taudio\n";
  CHECK_THROWS_AS(LoadManifest(p.string()), FormatError);
}

TEST_CASE("out-of-range durations warn without failing") {
  TempCorpus tmp;
  tmp.Touch("audio/a.wav");
  std::string path = tmp.ManifestWith({"a\taudio/a.wav\t45.0\tlong\t"});
  ManifestLoad load = LoadManifest(path);
  CHECK(load.entries.size() == 1);
  REQUIRE(load.warnings.size() == 1);
  CHECK(load.warnings[0].find("45") != std::string::npos);
}

TEST_CASE("split of 100 entries is exactly 70/20/10") {
  auto entries = SyntheticEntries(100);
  SplitResult s = Split(entries, {0.7, 0.2, 0.1}, 42);
  CHECK(s.train.size() == 70);
  CHECK(s.dev.size() == 20);
  CHECK(s.valid.size() == 10);
}

TEST_CASE("split partitions are disjoint and cover the input") {
  auto entries = SyntheticEntries(37);
  SplitResult s = Split(entries, {0.7, 0.2, 0.1}, 7);
  std::set<std::string> seen;
  for (const auto* part : {&s.train, &s.dev, &s.valid})
    for (const auto& e : *part) CHECK(seen.insert(e.id).second);
  CHECK(seen.size() == 37);
}

TEST_CASE("split is deterministic and stable under reordering") {
  auto entries = SyntheticEntries(50);
  SplitResult a = Split(entries, {0.7, 0.2, 0.1}, 123);
  SplitResult b = Split(entries, {0.7, 0.2, 0.1}, 123);
  auto ids = [](const std::vector<ManifestEntry>& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(e.id);
    return out;
  };
  CHECK(ids(a.train) == ids(b.train));
  CHECK(ids(a.valid) == ids(b.valid));

  std::reverse(entries.begin(), entries.end());
  SplitResult c = Split(entries, {0.7, 0.2, 0.1}, 123);
  auto sorted_ids = [&](const std::vector<ManifestEntry>& v) {
    auto out = ids(v);
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(sorted_ids(a.train) == sorted_ids(c.train));
  CHECK(sorted_ids(a.dev) == sorted_ids(c.dev));

  SplitResult d = Split(entries, {0.7, 0.2, 0.1}, 124);
  CHECK(sorted_ids(a.train) != sorted_ids(d.train));  // seed matters
}

TEST_CASE("split validates ratios and size") {
  auto entries = SyntheticEntries(2);
  CHECK_THROWS_AS(Split(entries, {0.7, 0.2, 0.1}, 1), DataError);
  auto more = SyntheticEntries(10);
  CHECK_THROWS_AS(Split(more, {0.7, 0.2, 0.2}, 1), ConfigError);
  CHECK_THROWS_AS(Split(more, {1.0, -0.1, 0.1}, 1), ConfigError);
}

TEST_CASE("epoch zero batches run shortest-first; later epochs shuffle") {
  auto entries = SyntheticEntries(23);
  std::reverse(entries.begin(), entries.end());  // scramble input order
  auto batches0 = BatchOrder(entries, 4, 0, 9);
  double prev = 0.0;
  std::set<int> seen;
  for (const auto& batch : batches0) {
    for (int idx : batch) {
      CHECK(entries[idx].duration >= prev);
      prev = entries[idx].duration;
      CHECK(seen.insert(idx).second);
    }
  }
  CHECK(seen.size() == 23);

  auto batches1 = BatchOrder(entries, 4, 1, 9);
  auto batches1_again = BatchOrder(entries, 4, 1, 9);
  CHECK(batches1 == batches1_again);
  CHECK(batches1 != batches0);
  std::set<int> seen1;
  for (const auto& batch : batches1)
    for (int idx : batch) CHECK(seen1.insert(idx).second);
  CHECK(seen1.size() == 23);
}

TEST_CASE("padding fills with the log floor and keeps true lengths") {
  Matrix a(40, 5), b(55, 5);
  for (int t = 0; t < 40; t++)
    for (int f = 0; f < 5; f++) a(t, f) = 1.0;
  for (int t = 0; t < 55; t++)
    for (int f = 0; f < 5; f++) b(t, f) = 2.0;
  Batch batch = PadBatch({&a, &b}, {{0}, {1}}, {"a", "b"});
  CHECK(batch.T_max == 55);
  CHECK(batch.feat_lengths == std::vector<int>{40, 55});
  CHECK(batch.features[0](39, 0) == 1.0);
  CHECK(batch.features[0](40, 0) == kLogFloor);
  CHECK(batch.features[1](54, 4) == 2.0);
}
