// asr/corpus.h

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

#ifndef ASR_CORPUS_H_
#define ASR_CORPUS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "asr/features.h"
#include "asr/matrix.h"

namespace asr {

struct ManifestEntry {
  std::string id;
  std::string audio_path;  // relative to the manifest location
  double duration = 0.0;   // seconds
  std::string transcript;  // normalized text
  std::string dialect;     // optional tag
};

inline const std::string kManifestHeader = "id\taudio\tduration\ttranscript\tdialect";

struct LoadManifestOptions {
  bool check_files = true;       // verify referenced audio exists
  double warn_min = 2.0;         // duration bounds outside which a warning is
  double warn_max = 30.0;        // collected (not an error)
};

struct ManifestLoad {
  std::vector<ManifestEntry> entries;
  double total_duration = 0.0;
  std::vector<std::string> warnings;
};

// Tab-separated UTF-8 with the fixed header row. Per-row validation errors
// (duplicate id, missing file, non-positive duration) are collected and
// reported together in one DataError.
ManifestLoad LoadManifest(const std::string& path, const LoadManifestOptions& opts = {});
void SaveManifest(const std::string& path, const std::vector<ManifestEntry>& entries);

struct SplitResult {
  std::vector<ManifestEntry> train, dev, valid;
};

// Deterministic shuffle (keyed on a hash of seed and id, so stable under
// input reordering), then partition by cumulative ratio with
// largest-remainder rounding.
SplitResult Split(const std::vector<ManifestEntry>& entries, std::array<double, 3> ratios,
                  uint64_t seed);

// Batch order for one epoch: epoch 0 ascending by duration (curriculum),
// later epochs a seeded shuffle. Returns per-batch index lists.
std::vector<std::vector<int>> BatchOrder(const std::vector<ManifestEntry>& entries,
                                         int batch_size, int epoch, uint64_t seed);

// Features padded to the batch maximum with the frontend log floor; true
// lengths carried for CTC and RNN masking.
struct Batch {
  std::vector<Matrix> features;        // each padded to T_max x F
  std::vector<int> feat_lengths;       // true frame counts
  std::vector<std::vector<int>> targets;
  std::vector<std::string> ids;
  int T_max = 0;
  int Size() const { return static_cast<int>(features.size()); }
};

Batch PadBatch(const std::vector<const Matrix*>& feats, const std::vector<std::vector<int>>& targets,
               const std::vector<std::string>& ids);

}  // namespace asr

#endif  // ASR_CORPUS_H_
