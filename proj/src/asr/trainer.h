// asr/trainer.h

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

#ifndef ASR_TRAINER_H_
#define ASR_TRAINER_H_

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "asr/net.h"
#include "asr/optim.h"
#include "asr/text.h"

namespace asr {

struct TrainItem {
  std::string id;
  Matrix features;          // normalized T x F
  std::vector<int> labels;  // encoded transcript
  double duration = 0.0;
};

struct TrainOptions {
  int epochs = 20;
  int batch_size = 8;
  int patience = 5;  // early stop after this many epochs without dev improvement
  uint64_t seed = 1;
  LrSchedule lr;
  std::ostream* log = nullptr;
  // When set, a checkpoint is written after every epoch and the live state
  // is snapped to its stored precision (keeps resume bit-exact).
  std::string checkpoint_path;
  const Alphabet* alphabet = nullptr;  // required with checkpoint_path
  int start_epoch = 0;                 // resume offset
  // Optional extra stop condition evaluated after each epoch.
  std::function<bool(int epoch, double train_loss, double dev_loss)> should_stop;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;  // mean per-utterance CTC loss over the epoch
  double dev_loss = 0.0;    // infer-mode mean per-utterance CTC loss
  double lr = 0.0;
};

struct TrainResult {
  std::vector<EpochStats> epochs;
  bool early_stopped = false;
  std::string stop_reason;
  int best_epoch = -1;
  double best_dev_loss = 0.0;
};

// Mean per-utterance CTC loss in infer mode.
double EvalLoss(AcousticNet* net, const std::vector<TrainItem>& items, int batch_size);

// CTC training loop: length-sorted batches on epoch 0, seeded shuffle after;
// Adam with the decaying schedule; early stopping on dev loss.
TrainResult Train(AcousticNet* net, AdamState* adam, const std::vector<TrainItem>& train,
                  const std::vector<TrainItem>& dev, const TrainOptions& opts);

}  // namespace asr

#endif  // ASR_TRAINER_H_
