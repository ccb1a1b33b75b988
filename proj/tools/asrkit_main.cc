// tools/asrkit_main.cc

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

#include <iostream>

#include "CLI11.hpp"
#include "asr/common.h"
#include "asr/pipeline.h"

int main(int argc, char** argv) {
  CLI::App app{"speech recognition pipeline: prepare, train, decode, eval, lm-train, tune"};
  app.require_subcommand(1);

  asr::PrepareArgs prepare;
  auto* cmd_prepare = app.add_subcommand("prepare", "clean raw audio/transcripts into a manifest");
  cmd_prepare->add_option("--raw", prepare.raw_dir, "directory of .wav/.txt pairs")->required();
  cmd_prepare->add_option("--out", prepare.out_dir, "output directory")->required();
  cmd_prepare->add_option("--config", prepare.config_path, "pipeline config JSON");

  asr::TrainArgs train;
  auto* cmd_train = app.add_subcommand("train", "train the acoustic model with CTC");
  cmd_train->add_option("--manifest", train.manifest, "training manifest")->required();
  cmd_train->add_option("--checkpoint", train.checkpoint_out, "checkpoint output path")->required();
  cmd_train->add_option("--config", train.config_path, "pipeline config JSON");
  cmd_train->add_option("--dev-manifest", train.dev_manifest, "explicit dev manifest");
  cmd_train->add_option("--resume", train.resume, "checkpoint to resume from");
  cmd_train->add_option("--cache-dir", train.cache_dir, "feature cache directory");
  cmd_train->add_option("--epochs", train.epochs, "override training.epochs");
  cmd_train->add_option("--batch-size", train.batch_size, "override training.batch_size");
  cmd_train->add_option("--patience", train.patience, "override training.patience");
  cmd_train->add_option("--seed", train.seed, "override training.seed");
  cmd_train->add_option("--threads", train.threads, "override training.threads");

  asr::DecodeArgs decode;
  auto* cmd_decode = app.add_subcommand("decode", "beam-search decode a manifest");
  cmd_decode->add_option("--manifest", decode.manifest, "manifest to decode")->required();
  cmd_decode->add_option("--checkpoint", decode.checkpoint, "acoustic checkpoint")->required();
  cmd_decode->add_option("--out", decode.out_path, "hypothesis TSV output")->required();
  cmd_decode->add_option("--lm", decode.lm_path, "ARPA language model");
  cmd_decode->add_option("--config", decode.config_path, "pipeline config JSON");
  cmd_decode->add_option("--beam-width", decode.beam_width, "override decoder.beam_width");
  cmd_decode->add_option("--alpha", decode.alpha, "override decoder.alpha");
  cmd_decode->add_option("--beta", decode.beta, "override decoder.beta");
  cmd_decode->add_option("--threads", decode.threads, "worker threads");
  cmd_decode->add_flag("--greedy", decode.greedy, "greedy decode (no LM)");

  asr::EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "score hypotheses against references");
  cmd_eval->add_option("--ref", eval.ref_path, "reference TSV (id, text)")->required();
  cmd_eval->add_option("--hyp", eval.hyp_path, "hypothesis TSV (id, text)")->required();
  cmd_eval->add_option("--compare", eval.compare_path, "second hypothesis TSV for a paired t-test");
  cmd_eval->add_flag("--cer", eval.cer, "character error rate instead of WER");

  asr::LmTrainArgs lm_train;
  auto* cmd_lm = app.add_subcommand("lm-train", "train a Kneser-Ney n-gram model to ARPA");
  cmd_lm->add_option("--corpus", lm_train.corpus_path, "text corpus, one sentence per line")
      ->required();
  cmd_lm->add_option("--out", lm_train.out_path, "ARPA output path")->required();
  cmd_lm->add_option("--config", lm_train.config_path, "pipeline config JSON");
  cmd_lm->add_option("--order", lm_train.order, "override lm.order");
  cmd_lm->add_flag("--skip-normalize", lm_train.skip_normalize, "corpus is already normalized");

  asr::TuneArgs tune;
  auto* cmd_tune = app.add_subcommand("tune", "grid-search decoder fusion weights on a dev set");
  cmd_tune->add_option("--manifest", tune.manifest, "dev manifest with transcripts")->required();
  cmd_tune->add_option("--checkpoint", tune.checkpoint, "acoustic checkpoint")->required();
  cmd_tune->add_option("--lm", tune.lm_path, "ARPA language model")->required();
  cmd_tune->add_option("--config", tune.config_path, "pipeline config JSON");
  cmd_tune->add_option("--alphas", tune.alphas, "LM weights to try")->required();
  cmd_tune->add_option("--betas", tune.betas, "word bonuses to try")->required();
  cmd_tune->add_option("--beam-width", tune.beam_width, "override decoder.beam_width");
  cmd_tune->add_option("--threads", tune.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : asr::kExitUsage;
  }

  try {
    if (cmd_prepare->parsed()) return asr::CmdPrepare(prepare, std::cout, std::cerr);
    if (cmd_train->parsed()) return asr::CmdTrain(train, std::cout, std::cerr);
    if (cmd_decode->parsed()) return asr::CmdDecode(decode, std::cout, std::cerr);
    if (cmd_eval->parsed()) return asr::CmdEval(eval, std::cout, std::cerr);
    if (cmd_lm->parsed()) return asr::CmdLmTrain(lm_train, std::cout, std::cerr);
    if (cmd_tune->parsed()) return asr::CmdTune(tune, std::cout, std::cerr);
  } catch (const asr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return asr::kExitUsage;
  } catch (const asr::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return asr::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return asr::kExitRuntime;
  }
  return asr::kExitUsage;
}
