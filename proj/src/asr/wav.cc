// asr/wav.cc

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

#include "asr/wav.h"

#include <cstring>
#include <fstream>

#include "asr/common.h"

namespace asr {

namespace {

uint32_t ReadU32(const std::string& b, size_t off) {
  return static_cast<uint32_t>(static_cast<unsigned char>(b[off])) |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 1])) << 8 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 2])) << 16 |
         static_cast<uint32_t>(static_cast<unsigned char>(b[off + 3])) << 24;
}

uint16_t ReadU16(const std::string& b, size_t off) {
  return static_cast<uint16_t>(static_cast<unsigned char>(b[off]) |
                               static_cast<unsigned char>(b[off + 1]) << 8);
}

void PutU32(std::string* b, uint32_t v) {
  b->push_back(static_cast<char>(v & 0xff));
  b->push_back(static_cast<char>((v >> 8) & 0xff));
  b->push_back(static_cast<char>((v >> 16) & 0xff));
  b->push_back(static_cast<char>((v >> 24) & 0xff));
}

void PutU16(std::string* b, uint16_t v) {
  b->push_back(static_cast<char>(v & 0xff));
  b->push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

WavData ReadWav(const std::string& bytes) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 || bytes.compare(8, 4, "WAVE") != 0)
    throw FormatError("wav: not a RIFF/WAVE container");

  WavData wav;
  bool have_fmt = false, have_data = false;
  int bits = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    std::string id = bytes.substr(pos, 4);
    uint32_t chunk_size = ReadU32(bytes, pos + 4);
    size_t body = pos + 8;
    if (id == "fmt ") {
      if (chunk_size < 16 || body + 16 > bytes.size())
        throw FormatError("wav: truncated fmt chunk");
      uint16_t format = ReadU16(bytes, body);
      wav.channels = ReadU16(bytes, body + 2);
      wav.sample_rate = static_cast<int>(ReadU32(bytes, body + 4));
      bits = ReadU16(bytes, body + 14);
      if (format != 1) throw FormatError(StrCat("wav: unsupported format tag ", format));
      if (bits != 16) throw FormatError(StrCat("wav: unsupported bit depth ", bits));
      if (wav.channels < 1 || wav.channels > 2)
        throw FormatError(StrCat("wav: unsupported channel count ", wav.channels));
      if (wav.sample_rate <= 0) throw FormatError("wav: non-positive sample rate");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError("wav: data chunk before fmt chunk");
      if (body + chunk_size > bytes.size()) throw FormatError("wav: truncated data chunk");
      size_t count = chunk_size / 2;
      if (count % wav.channels != 0) throw FormatError("wav: data size not frame-aligned");
      wav.samples.resize(count);
      std::memcpy(wav.samples.data(), bytes.data() + body, count * 2);
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }
  if (!have_fmt || !have_data) throw FormatError("wav: missing fmt or data chunk");
  return wav;
}

WavData ReadWavFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("wav: cannot open ", path));
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ReadWav(bytes);
}

std::string WriteWav(const WavData& wav) {
  if (wav.channels < 1 || wav.sample_rate <= 0) throw Error("wav: invalid header fields");
  uint32_t data_size = static_cast<uint32_t>(wav.samples.size() * 2);
  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  PutU32(&out, 36 + data_size);
  out += "WAVEfmt ";
  PutU32(&out, 16);
  PutU16(&out, 1);  // PCM
  PutU16(&out, static_cast<uint16_t>(wav.channels));
  PutU32(&out, static_cast<uint32_t>(wav.sample_rate));
  PutU32(&out, static_cast<uint32_t>(wav.sample_rate * wav.channels * 2));
  PutU16(&out, static_cast<uint16_t>(wav.channels * 2));
  PutU16(&out, 16);
  out += "data";
  PutU32(&out, data_size);
  size_t off = out.size();
  out.resize(off + data_size);
  std::memcpy(out.data() + off, wav.samples.data(), data_size);
  return out;
}

void WriteWavFile(const std::string& path, const WavData& wav) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(StrCat("wav: cannot write ", path));
  std::string bytes = WriteWav(wav);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(StrCat("wav: short write to ", path));
}

}  // namespace asr
