// asr/checkpoint.cc

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

#include "asr/checkpoint.h"

#include <cstring>
#include <fstream>
#include <vector>

#include "asr/common.h"
#include "asr/config.h"
#include "json.hpp"

namespace asr {

namespace {

constexpr char kMagic[8] = {'A', 'S', 'R', 'K', 'C', 'K', 'P', 'T'};
constexpr uint32_t kVersion = 1;

void WriteF32(std::ofstream& out, std::span<const double> values) {
  std::vector<float> buf(values.size());
  for (size_t i = 0; i < values.size(); i++) buf[i] = static_cast<float>(values[i]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(sizeof(float) * buf.size()));
}

void ReadF32(std::ifstream& in, std::span<double> values, const std::string& what) {
  std::vector<float> buf(values.size());
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(sizeof(float) * buf.size()));
  if (!in) throw FormatError(StrCat("checkpoint: truncated ", what));
  for (size_t i = 0; i < values.size(); i++) values[i] = buf[i];
}

}  // namespace

void SaveCheckpoint(const std::string& path, const AcousticNet& net, const AdamState& adam,
                    const Alphabet& alphabet, int epoch) {
  nlohmann::ordered_json header;
  header["arch"] = nlohmann::ordered_json::parse(ArchToJson(net.Config()));
  nlohmann::ordered_json symbols = nlohmann::ordered_json::array();
  for (int i = 0; i < alphabet.Size(); i++) symbols.push_back(alphabet.Symbol(i));
  header["alphabet"] = symbols;
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(alphabet.Hash()));
  header["alphabet_hash"] = hash_hex;
  header["epoch"] = epoch;
  header["adam_step"] = adam.step;
  header["seed"] = net.Config().seed;
  std::string header_text = header.dump(2) + "\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(StrCat("checkpoint: cannot write ", path));
  out.write(kMagic, sizeof(kMagic));
  uint32_t version = kVersion;
  uint32_t hlen = static_cast<uint32_t>(header_text.size());
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&hlen), 4);
  out.write(header_text.data(), hlen);
  WriteF32(out, net.Params());
  WriteF32(out, net.RunningStats());
  WriteF32(out, adam.m);
  WriteF32(out, adam.v);
  if (!out) throw Error(StrCat("checkpoint: short write to ", path));
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("checkpoint: cannot open ", path));
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw FormatError(StrCat("checkpoint: bad magic in ", path));
  uint32_t version = 0, hlen = 0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&hlen), 4);
  if (!in || version != kVersion)
    throw FormatError(StrCat("checkpoint: unsupported version in ", path));
  if (hlen == 0 || hlen > (1u << 24)) throw FormatError("checkpoint: implausible header size");
  std::string header_text(hlen, '\0');
  in.read(header_text.data(), hlen);
  if (!in) throw FormatError("checkpoint: truncated header");

  nlohmann::ordered_json header;
  try {
    header = nlohmann::ordered_json::parse(header_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(StrCat("checkpoint: bad header JSON: ", e.what()));
  }

  Checkpoint ck;
  ck.arch = ArchFromJson(header.at("arch").dump());
  std::vector<std::string> symbols;
  for (const auto& s : header.at("alphabet")) symbols.push_back(s.get<std::string>());
  ck.alphabet = Alphabet(symbols);
  ck.alphabet_hash = std::stoull(header.at("alphabet_hash").get<std::string>(), nullptr, 16);
  ck.epoch = header.value("epoch", 0);
  ck.arch.seed = header.value("seed", uint64_t{1});
  if (ck.alphabet.Hash() != ck.alphabet_hash)
    throw FormatError("checkpoint: alphabet hash does not match stored symbols");
  if (ck.arch.num_labels != ck.alphabet.NumLabels())
    throw FormatError("checkpoint: architecture labels disagree with alphabet");

  ck.net.reset(new AcousticNet(ck.arch));
  ck.adam.Init(ck.net->Params().size());
  ck.adam.step = header.value("adam_step", int64_t{0});
  ReadF32(in, ck.net->Params(), "parameters");
  ReadF32(in, ck.net->RunningStats(), "running stats");
  ReadF32(in, ck.adam.m, "first moments");
  ReadF32(in, ck.adam.v, "second moments");
  return ck;
}

}  // namespace asr
