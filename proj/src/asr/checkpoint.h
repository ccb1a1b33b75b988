// asr/checkpoint.h

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

#ifndef ASR_CHECKPOINT_H_
#define ASR_CHECKPOINT_H_

#include <memory>
#include <string>

#include "asr/net.h"
#include "asr/optim.h"
#include "asr/text.h"

namespace asr {

// Versioned binary: magic, version, canonical-text header (architecture,
// alphabet, counters), then parameters, BatchNorm running stats and Adam
// moments as little-endian 32-bit floats in declaration order.
struct Checkpoint {
  NetConfig arch;
  Alphabet alphabet;
  uint64_t alphabet_hash = 0;
  int epoch = 0;
  std::unique_ptr<AcousticNet> net;
  AdamState adam;
};

// Saving rounds the persisted state through its 32-bit representation, so
// call SnapToStorage on the live net/optimizer afterwards when the run
// continues (the trainer does this), keeping resume bit-exact.
void SaveCheckpoint(const std::string& path, const AcousticNet& net, const AdamState& adam,
                    const Alphabet& alphabet, int epoch);

Checkpoint LoadCheckpoint(const std::string& path);

}  // namespace asr

#endif  // ASR_CHECKPOINT_H_
