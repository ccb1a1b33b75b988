// asr/pipeline.h

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

#ifndef ASR_PIPELINE_H_
#define ASR_PIPELINE_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "asr/config.h"

namespace asr {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;    // usage / configuration
constexpr int kExitData = 2;     // data validation
constexpr int kExitRuntime = 3;  // runtime failure

struct PrepareArgs {
  std::string raw_dir;
  std::string out_dir;
  std::string config_path;  // optional; defaults otherwise
};

// decode -> resample -> highpass -> segment -> normalize transcripts. Writes
// out_dir/audio/*.wav, out_dir/manifest.tsv and out_dir/rejections.tsv;
// prints summary counts. Throws DataError when nothing was accepted.
int CmdPrepare(const PrepareArgs& args, std::ostream& out, std::ostream& err);

struct TrainArgs {
  std::string manifest;
  std::string config_path;
  std::string checkpoint_out;
  std::string dev_manifest;  // optional explicit dev set
  std::string resume;        // optional checkpoint to continue from
  std::string cache_dir;     // optional feature cache
  std::optional<int> epochs, batch_size, patience, threads;
  std::optional<uint64_t> seed;
};

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err);

struct DecodeArgs {
  std::string manifest;
  std::string checkpoint;
  std::string lm_path;  // optional; required when alpha > 0
  std::string out_path;
  std::string config_path;
  std::optional<int> beam_width;
  std::optional<double> alpha, beta;
  std::optional<int> threads;
  bool greedy = false;
};

int CmdDecode(const DecodeArgs& args, std::ostream& out, std::ostream& err);

struct EvalArgs {
  std::string ref_path;
  std::string hyp_path;
  std::string compare_path;  // optional second system for the paired t-test
  bool cer = false;
};

int CmdEval(const EvalArgs& args, std::ostream& out, std::ostream& err);

struct LmTrainArgs {
  std::string corpus_path;
  std::string out_path;
  std::string config_path;
  std::optional<int> order;
  bool skip_normalize = false;  // corpus is already normalized
};

int CmdLmTrain(const LmTrainArgs& args, std::ostream& out, std::ostream& err);

struct TuneArgs {
  std::string manifest;
  std::string checkpoint;
  std::string lm_path;
  std::string config_path;
  std::vector<double> alphas;
  std::vector<double> betas;
  std::optional<int> beam_width;
  std::optional<int> threads;
};

// Grid search over the fusion weights on a dev manifest; the acoustic pass
// runs once per utterance.
int CmdTune(const TuneArgs& args, std::ostream& out, std::ostream& err);

// Tab-separated (utterance-id, text, ...) files; extra columns ignored.
std::vector<std::pair<std::string, std::string>> ReadTranscriptTsv(const std::string& path);

}  // namespace asr

#endif  // ASR_PIPELINE_H_
