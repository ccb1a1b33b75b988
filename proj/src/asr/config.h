// asr/config.h

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

#ifndef ASR_CONFIG_H_
#define ASR_CONFIG_H_

#include <string>

#include "asr/audio.h"
#include "asr/ctc.h"
#include "asr/net.h"
#include "asr/optim.h"

namespace asr {

// One human-readable JSON file drives every pipeline stage; command-line
// flags override individual fields.
struct PipelineConfig {
  // audio
  double highpass_hz = 150.0;
  int target_rate = 16000;
  SegmentSpec segment;
  // features
  double frame_length = 0.02;
  double frame_shift = 0.01;
  // text
  std::string alphabet_path = "data/alphabet_ar.txt";
  // architecture (num_labels is derived from the alphabet at build time)
  NetConfig arch = NetConfig::Reference(0);
  // training
  LrSchedule lr;
  int batch_size = 8;
  int epochs = 20;
  uint64_t seed = 1;
  int patience = 5;
  double dev_fraction = 0.1;
  int threads = 1;
  // decoder
  DecoderConfig decoder;
  // language model
  int lm_order = 4;
  std::string lm_path;
};

PipelineConfig DefaultConfig();

// Parses a config file over the defaults. Unknown keys are errors.
PipelineConfig LoadConfig(const std::string& path);
PipelineConfig ParseConfig(const std::string& json_text);

// Canonical serialized form: fixed key order, two-space indent, newline.
std::string CanonicalConfig(const PipelineConfig& config);

// Architecture as canonical JSON text (checkpoint header uses this).
std::string ArchToJson(const NetConfig& arch);
NetConfig ArchFromJson(const std::string& text);

}  // namespace asr

#endif  // ASR_CONFIG_H_
