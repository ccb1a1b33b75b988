// asr/trainer.cc

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

#include "asr/trainer.h"

#include <cmath>
#include <iomanip>
#include <limits>

#include "asr/checkpoint.h"
#include "asr/common.h"
#include "asr/corpus.h"
#include "asr/ctc.h"

namespace asr {

namespace {

// Minimal frames a CTC target needs: one per label plus one per adjacent
// repeat (for the separating blank).
int MinFrames(const std::vector<int>& labels) {
  int need = static_cast<int>(labels.size());
  for (size_t i = 1; i < labels.size(); i++)
    if (labels[i] == labels[i - 1]) need++;
  return need;
}

void CheckFeasible(const AcousticNet& net, const std::vector<TrainItem>& items,
                   const char* which) {
  std::string bad;
  for (const auto& item : items) {
    if (net.OutputFrames(item.features.Rows()) < MinFrames(item.labels)) {
      if (!bad.empty()) bad += ", ";
      bad += item.id;
    }
  }
  if (!bad.empty())
    throw DataError(StrCat("train: ", which, " utterances too short for their transcripts: ",
                           bad));
}

std::vector<ManifestEntry> AsEntries(const std::vector<TrainItem>& items) {
  std::vector<ManifestEntry> entries(items.size());
  for (size_t i = 0; i < items.size(); i++) {
    entries[i].id = items[i].id;
    entries[i].duration = items[i].duration;
  }
  return entries;
}

}  // namespace

double EvalLoss(AcousticNet* net, const std::vector<TrainItem>& items, int batch_size) {
  if (items.empty()) throw DataError("eval: no utterances");
  double total = 0.0;
  for (size_t i = 0; i < items.size(); i += batch_size) {
    std::vector<const Matrix*> feats;
    for (size_t j = i; j < std::min(items.size(), i + batch_size); j++)
      feats.push_back(&items[j].features);
    std::vector<Matrix> logprobs = net->Forward(feats, NetMode::kInfer);
    for (size_t j = 0; j < feats.size(); j++) {
      CtcLossResult r = CtcLoss(logprobs[j], items[i + j].labels);
      if (!r.feasible) throw DataError(StrCat("eval: infeasible target for ", items[i + j].id));
      total += r.loss;
    }
  }
  return total / static_cast<double>(items.size());
}

TrainResult Train(AcousticNet* net, AdamState* adam, const std::vector<TrainItem>& train,
                  const std::vector<TrainItem>& dev, const TrainOptions& opts) {
  if (train.empty()) throw DataError("train: empty training set");
  if (opts.batch_size < 1) throw ConfigError("train: batch_size must be >= 1");
  if (!opts.checkpoint_path.empty() && opts.alphabet == nullptr)
    throw ConfigError("train: checkpointing requires the alphabet");
  CheckFeasible(*net, train, "training");
  if (!dev.empty()) CheckFeasible(*net, dev, "dev");

  std::vector<ManifestEntry> entries = AsEntries(train);
  std::vector<double> grad(net->Params().size());

  TrainResult result;
  result.best_dev_loss = std::numeric_limits<double>::infinity();
  for (int epoch = opts.start_epoch; epoch < opts.epochs; epoch++) {
    const double lr = opts.lr.At(epoch);
    auto batches = BatchOrder(entries, opts.batch_size, epoch, opts.seed);
    double epoch_loss = 0.0;
    int64_t counted = 0;
    int batch_index = 0;
    for (const auto& batch : batches) {
      std::vector<const Matrix*> feats;
      feats.reserve(batch.size());
      for (int idx : batch) feats.push_back(&train[idx].features);
      const uint64_t dropout_seed =
          Fnv1a64(StrCat("dropout.e", epoch, ".b", batch_index), opts.seed);
      auto ctx = AcousticNet::NewContext();
      std::vector<Matrix> logprobs =
          net->Forward(feats, NetMode::kTrain, dropout_seed, ctx.get(),
                       /*update_running_stats=*/true);

      std::vector<Matrix> dlogprobs(batch.size());
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (size_t j = 0; j < batch.size(); j++) {
        double loss = 0.0;
        dlogprobs[j] = CtcGradLogProbs(logprobs[j], train[batch[j]].labels, &loss);
        if (!std::isfinite(loss))
          throw Error(StrCat("train: non-finite loss on ", train[batch[j]].id));
        epoch_loss += loss;
        counted++;
        double* d = dlogprobs[j].Data();
        for (size_t p = 0; p < dlogprobs[j].Size(); p++) d[p] *= scale;
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      net->Backward(*ctx, dlogprobs, grad);
      AdamStep(net->Params(), grad, adam, lr);
      batch_index++;
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.lr = lr;
    stats.train_loss = epoch_loss / static_cast<double>(counted);
    stats.dev_loss = dev.empty() ? stats.train_loss : EvalLoss(net, dev, opts.batch_size);
    result.epochs.push_back(stats);
    if (opts.log)
      (*opts.log) << std::setprecision(17) << "epoch " << epoch << " lr " << lr << " train_loss "
                  << stats.train_loss << " dev_loss " << stats.dev_loss << "\n";

    if (!opts.checkpoint_path.empty()) {
      SaveCheckpoint(opts.checkpoint_path, *net, *adam, *opts.alphabet, epoch + 1);
      net->SnapToStorage();
      adam->SnapToStorage();
    }

    if (stats.dev_loss < result.best_dev_loss) {
      result.best_dev_loss = stats.dev_loss;
      result.best_epoch = epoch;
    } else if (epoch - result.best_epoch >= opts.patience && opts.patience > 0) {
      result.early_stopped = true;
      result.stop_reason = StrCat("dev loss did not improve for ", opts.patience,
                                  " epochs (best epoch ", result.best_epoch, ")");
      if (opts.log) (*opts.log) << "early stop: " << result.stop_reason << "\n";
      break;
    }
    if (opts.should_stop && opts.should_stop(epoch, stats.train_loss, stats.dev_loss)) {
      result.early_stopped = true;
      result.stop_reason = "stop condition met";
      if (opts.log) (*opts.log) << "early stop: stop condition met\n";
      break;
    }
  }
  return result;
}

}  // namespace asr
