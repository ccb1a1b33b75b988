// asr/config.cc

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

#include "asr/config.h"

#include <fstream>

#include "asr/common.h"
#include "json.hpp"

namespace asr {

using Json = nlohmann::ordered_json;

namespace {

Json ArchJson(const NetConfig& arch) {
  Json j;
  j["input_bins"] = arch.input_bins;
  j["num_labels"] = arch.num_labels;
  Json conv = Json::array();
  for (const auto& c : arch.conv) {
    Json jc;
    jc["filters"] = c.filters;
    jc["kernel"] = {c.kernel_f, c.kernel_t};
    jc["stride"] = {c.stride_f, c.stride_t};
    jc["batchnorm"] = c.batchnorm;
    conv.push_back(jc);
  }
  j["conv"] = conv;
  Json rnn = Json::array();
  for (const auto& r : arch.rnn) {
    Json jr;
    jr["cell"] = r.cell == RnnCell::kGru ? "gru" : "lstm";
    jr["width"] = r.width;
    jr["dropout"] = r.dropout;
    rnn.push_back(jr);
  }
  j["rnn"] = rnn;
  return j;
}

NetConfig ArchFromJsonObj(const Json& j) {
  NetConfig arch;
  arch.conv.clear();
  arch.rnn.clear();
  arch.input_bins = j.at("input_bins").get<int>();
  arch.num_labels = j.value("num_labels", 0);
  for (const auto& jc : j.at("conv")) {
    ConvLayerSpec c;
    c.filters = jc.at("filters").get<int>();
    c.kernel_f = jc.at("kernel").at(0).get<int>();
    c.kernel_t = jc.at("kernel").at(1).get<int>();
    c.stride_f = jc.at("stride").at(0).get<int>();
    c.stride_t = jc.at("stride").at(1).get<int>();
    c.batchnorm = jc.value("batchnorm", true);
    arch.conv.push_back(c);
  }
  for (const auto& jr : j.at("rnn")) {
    RnnLayerSpec r;
    std::string cell = jr.at("cell").get<std::string>();
    if (cell == "gru") {
      r.cell = RnnCell::kGru;
    } else if (cell == "lstm") {
      r.cell = RnnCell::kLstm;
    } else {
      throw ConfigError(StrCat("config: unknown rnn cell '", cell, "'"));
    }
    r.width = jr.at("width").get<int>();
    r.dropout = jr.value("dropout", 0.2);
    arch.rnn.push_back(r);
  }
  return arch;
}

Json ToJson(const PipelineConfig& c) {
  Json j;
  j["audio"] = {{"highpass_hz", c.highpass_hz},
                {"target_rate", c.target_rate},
                {"segment",
                 {{"min_duration", c.segment.min_duration},
                  {"max_duration", c.segment.max_duration},
                  {"silence_threshold_db", c.segment.silence_threshold_db},
                  {"min_silence", c.segment.min_silence}}}};
  j["features"] = {{"frame_length", c.frame_length}, {"frame_shift", c.frame_shift}};
  j["text"] = {{"alphabet", c.alphabet_path}};
  Json arch = ArchJson(c.arch);
  arch.erase("num_labels");  // derived from the alphabet
  j["arch"] = arch;
  j["training"] = {{"initial_lr", c.lr.initial},
                   {"lr_decay_factor", c.lr.decay_factor},
                   {"lr_decay_every", c.lr.decay_every},
                   {"batch_size", c.batch_size},
                   {"epochs", c.epochs},
                   {"seed", c.seed},
                   {"patience", c.patience},
                   {"dev_fraction", c.dev_fraction},
                   {"threads", c.threads}};
  j["decoder"] = {{"beam_width", c.decoder.beam_width},
                  {"alpha", c.decoder.alpha},
                  {"beta", c.decoder.beta}};
  j["lm"] = {{"order", c.lm_order}, {"arpa", c.lm_path}};
  return j;
}

void CheckKnownKeys(const Json& j, const Json& reference, const std::string& path) {
  if (!j.is_object()) return;
  for (const auto& [key, value] : j.items()) {
    if (!reference.contains(key))
      throw ConfigError(StrCat("config: unknown key '", path, key, "'"));
    if (value.is_object() && key != "arch") CheckKnownKeys(value, reference.at(key), path + key + ".");
  }
}

void Validate(const PipelineConfig& c) {
  if (c.target_rate <= 0) throw ConfigError("config: target_rate must be positive");
  if (!(c.highpass_hz > 0.0) || !(c.highpass_hz < 0.5 * c.target_rate))
    throw ConfigError("config: highpass_hz outside (0, target_rate/2)");
  if (!(c.segment.min_duration > 0.0) || !(c.segment.min_duration < c.segment.max_duration))
    throw ConfigError("config: require 0 < segment.min_duration < segment.max_duration");
  if (!(c.frame_length > 0.0) || !(c.frame_shift > 0.0))
    throw ConfigError("config: frame_length and frame_shift must be positive");
  if (c.batch_size < 1) throw ConfigError("config: batch_size must be >= 1");
  if (c.epochs < 0) throw ConfigError("config: epochs must be >= 0");
  if (c.patience < 0) throw ConfigError("config: patience must be >= 0");
  if (c.dev_fraction < 0.0 || c.dev_fraction >= 1.0)
    throw ConfigError("config: dev_fraction outside [0, 1)");
  if (c.threads < 0) throw ConfigError("config: threads must be >= 0");
  if (!(c.lr.initial > 0.0) || !(c.lr.decay_factor >= 1.0) || c.lr.decay_every < 1)
    throw ConfigError("config: bad learning-rate schedule");
  if (c.decoder.beam_width < 1) throw ConfigError("config: beam_width must be >= 1");
  if (c.lm_order < 1 || c.lm_order > 5) throw ConfigError("config: lm.order outside 1..5");
}

}  // namespace

PipelineConfig DefaultConfig() { return PipelineConfig{}; }

PipelineConfig ParseConfig(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(StrCat("config: JSON parse error: ", e.what()));
  }
  PipelineConfig c = DefaultConfig();
  CheckKnownKeys(j, ToJson(c), "");

  if (j.contains("audio")) {
    const auto& a = j["audio"];
    c.highpass_hz = a.value("highpass_hz", c.highpass_hz);
    c.target_rate = a.value("target_rate", c.target_rate);
    if (a.contains("segment")) {
      const auto& s = a["segment"];
      c.segment.min_duration = s.value("min_duration", c.segment.min_duration);
      c.segment.max_duration = s.value("max_duration", c.segment.max_duration);
      c.segment.silence_threshold_db =
          s.value("silence_threshold_db", c.segment.silence_threshold_db);
      c.segment.min_silence = s.value("min_silence", c.segment.min_silence);
    }
  }
  if (j.contains("features")) {
    c.frame_length = j["features"].value("frame_length", c.frame_length);
    c.frame_shift = j["features"].value("frame_shift", c.frame_shift);
  }
  if (j.contains("text")) c.alphabet_path = j["text"].value("alphabet", c.alphabet_path);
  if (j.contains("arch")) {
    Json arch = j["arch"];
    if (!arch.contains("num_labels")) arch["num_labels"] = 0;
    c.arch = ArchFromJsonObj(arch);
  }
  if (j.contains("training")) {
    const auto& t = j["training"];
    c.lr.initial = t.value("initial_lr", c.lr.initial);
    c.lr.decay_factor = t.value("lr_decay_factor", c.lr.decay_factor);
    c.lr.decay_every = t.value("lr_decay_every", c.lr.decay_every);
    c.batch_size = t.value("batch_size", c.batch_size);
    c.epochs = t.value("epochs", c.epochs);
    c.seed = t.value("seed", c.seed);
    c.patience = t.value("patience", c.patience);
    c.dev_fraction = t.value("dev_fraction", c.dev_fraction);
    c.threads = t.value("threads", c.threads);
  }
  if (j.contains("decoder")) {
    const auto& d = j["decoder"];
    c.decoder.beam_width = d.value("beam_width", c.decoder.beam_width);
    c.decoder.alpha = d.value("alpha", c.decoder.alpha);
    c.decoder.beta = d.value("beta", c.decoder.beta);
  }
  if (j.contains("lm")) {
    c.lm_order = j["lm"].value("order", c.lm_order);
    c.lm_path = j["lm"].value("arpa", c.lm_path);
  }
  c.arch.seed = c.seed;
  Validate(c);
  return c;
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(StrCat("config: cannot open ", path));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ParseConfig(text);
}

std::string CanonicalConfig(const PipelineConfig& config) { return ToJson(config).dump(2) + "\n"; }

std::string ArchToJson(const NetConfig& arch) { return ArchJson(arch).dump(2) + "\n"; }

NetConfig ArchFromJson(const std::string& text) {
  try {
    return ArchFromJsonObj(Json::parse(text));
  } catch (const Json::exception& e) {
    throw FormatError(StrCat("arch: bad JSON: ", e.what()));
  }
}

}  // namespace asr
