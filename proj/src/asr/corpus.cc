// asr/corpus.cc

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

#include "asr/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "asr/common.h"

namespace fs = std::filesystem;

namespace asr {

namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

std::string FormatDuration(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", seconds);
  return buf;
}

}  // namespace

ManifestLoad LoadManifest(const std::string& path, const LoadManifestOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("manifest: cannot open ", path));
  const fs::path base = fs::path(path).parent_path();

  std::string line;
  if (!std::getline(in, line)) throw FormatError(StrCat("manifest: empty file ", path));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kManifestHeader)
    throw FormatError(StrCat("manifest: bad header '", line, "', expected '", kManifestHeader,
                             "'"));

  ManifestLoad load;
  std::vector<std::string> errors;
  std::set<std::string> seen_ids;
  int row = 1;
  while (std::getline(in, line)) {
    row++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 5) {
      errors.push_back(StrCat("row ", row, ": expected 5 tab-separated fields, got ",
                              fields.size()));
      continue;
    }
    ManifestEntry e;
    e.id = fields[0];
    e.audio_path = fields[1];
    try {
      e.duration = std::stod(fields[2]);
    } catch (const std::exception&) {
      errors.push_back(StrCat("row ", row, ": unparsable duration '", fields[2], "'"));
      continue;
    }
    e.transcript = fields[3];
    e.dialect = fields[4];

    if (e.id.empty()) errors.push_back(StrCat("row ", row, ": empty id"));
    if (!seen_ids.insert(e.id).second)
      errors.push_back(StrCat("row ", row, ": duplicate utterance id '", e.id, "'"));
    if (!(e.duration > 0.0))
      errors.push_back(StrCat("row ", row, " (", e.id, "): non-positive duration"));
    if (opts.check_files && !fs::exists(base / e.audio_path))
      errors.push_back(StrCat("row ", row, " (", e.id, "): missing audio file '", e.audio_path,
                              "'"));
    if (e.duration > 0.0 && (e.duration < opts.warn_min || e.duration > opts.warn_max))
      load.warnings.push_back(StrCat(e.id, ": duration ", e.duration, " s outside [",
                                     opts.warn_min, ", ", opts.warn_max, "]"));
    load.total_duration += e.duration;
    load.entries.push_back(std::move(e));
  }
  if (!errors.empty()) {
    std::string msg = StrCat("manifest ", path, ": ", errors.size(), " validation error(s)");
    for (const auto& e : errors) msg += "\n  " + e;
    throw DataError(msg);
  }
  return load;
}

void SaveManifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(StrCat("manifest: cannot write ", path));
  out << kManifestHeader << "\n";
  for (const auto& e : entries) {
    out << e.id << "\t" << e.audio_path << "\t" << FormatDuration(e.duration) << "\t"
        << e.transcript << "\t" << e.dialect << "\n";
  }
  if (!out) throw Error(StrCat("manifest: short write to ", path));
}

SplitResult Split(const std::vector<ManifestEntry>& entries, std::array<double, 3> ratios,
                  uint64_t seed) {
  double sum = ratios[0] + ratios[1] + ratios[2];
  for (double r : ratios)
    if (!(r > 0.0)) throw ConfigError("split: ratios must be positive");
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split: ratios must sum to 1");
  const size_t n = entries.size();
  if (n < 3) throw DataError(StrCat("split: need at least 3 entries, have ", n));

  // Shuffle keyed on (seed, id) so the split ignores input order.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<uint64_t> key(n);
  for (size_t i = 0; i < n; i++) {
    uint64_t h = Fnv1a64Bytes(&seed, sizeof(seed));
    key[i] = Fnv1a64(entries[i].id, h);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    return entries[a].id < entries[b].id;
  });

  // Largest-remainder apportionment of the three partition sizes.
  std::array<size_t, 3> sizes{};
  std::array<double, 3> frac{};
  size_t assigned = 0;
  for (int k = 0; k < 3; k++) {
    double exact = ratios[k] * static_cast<double>(n);
    sizes[k] = static_cast<size_t>(std::floor(exact + 1e-12));
    frac[k] = exact - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  std::array<int, 3> by_frac{0, 1, 2};
  std::sort(by_frac.begin(), by_frac.end(), [&](int a, int b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a < b;
  });
  for (size_t extra = 0; extra < n - assigned; extra++) sizes[by_frac[extra % 3]]++;

  SplitResult res;
  size_t pos = 0;
  for (int k = 0; k < 3; k++) {
    auto* part = k == 0 ? &res.train : (k == 1 ? &res.dev : &res.valid);
    for (size_t i = 0; i < sizes[k]; i++) part->push_back(entries[order[pos++]]);
  }
  return res;
}

std::vector<std::vector<int>> BatchOrder(const std::vector<ManifestEntry>& entries,
                                         int batch_size, int epoch, uint64_t seed) {
  if (batch_size < 1) throw ConfigError("batch: batch_size must be >= 1");
  const int n = static_cast<int>(entries.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (epoch == 0) {
    // Shortest first: cheap examples lead the curriculum.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (entries[a].duration != entries[b].duration)
        return entries[a].duration < entries[b].duration;
      return entries[a].id < entries[b].id;
    });
  } else {
    Rng rng = Rng::Fork(seed, StrCat("batch_order.epoch", epoch));
    rng.Shuffle(&order);
  }
  std::vector<std::vector<int>> batches;
  for (int i = 0; i < n; i += batch_size) {
    batches.emplace_back(order.begin() + i, order.begin() + std::min(n, i + batch_size));
  }
  return batches;
}

Batch PadBatch(const std::vector<const Matrix*>& feats,
               const std::vector<std::vector<int>>& targets, const std::vector<std::string>& ids) {
  if (feats.empty() || feats.size() != targets.size() || feats.size() != ids.size())
    throw Error("batch: inconsistent item counts");
  Batch b;
  int t_max = 0, bins = feats[0]->Cols();
  for (const Matrix* f : feats) {
    if (f->Cols() != bins) throw Error("batch: inconsistent feature widths");
    t_max = std::max(t_max, f->Rows());
  }
  b.T_max = t_max;
  for (size_t i = 0; i < feats.size(); i++) {
    Matrix padded(t_max, bins);
    for (int t = 0; t < t_max; t++) {
      double* dst = padded.Row(t);
      if (t < feats[i]->Rows()) {
        const double* src = feats[i]->Row(t);
        std::copy(src, src + bins, dst);
      } else {
        std::fill(dst, dst + bins, kLogFloor);
      }
    }
    b.features.push_back(std::move(padded));
    b.feat_lengths.push_back(feats[i]->Rows());
    b.targets.push_back(targets[i]);
    b.ids.push_back(ids[i]);
  }
  return b;
}

}  // namespace asr
