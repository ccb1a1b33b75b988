// bindings/python/module.cc

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

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "asr/audio.h"
#include "asr/checkpoint.h"
#include "asr/common.h"
#include "asr/ctc.h"
#include "asr/eval.h"
#include "asr/features.h"
#include "asr/lm.h"
#include "asr/net.h"
#include "asr/text.h"

namespace py = pybind11;
using namespace asr;

namespace {

Matrix MatrixFromArray(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw ConfigError("expected a 2-D array");
  Matrix m(static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1)));
  std::memcpy(m.Data(), arr.data(), sizeof(double) * m.Size());
  return m;
}

py::array_t<double> ArrayFromMatrix(const Matrix& m) {
  py::array_t<double> arr({m.Rows(), m.Cols()});
  std::memcpy(arr.mutable_data(), m.Data(), sizeof(double) * m.Size());
  return arr;
}

AudioBuffer BufferFromArray(const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
                            int rate) {
  if (samples.ndim() != 1) throw ConfigError("expected a 1-D sample array");
  AudioBuffer buf;
  buf.sample_rate = rate;
  buf.samples.assign(samples.data(), samples.data() + samples.shape(0));
  return buf;
}

py::array_t<double> ArrayFromBuffer(const AudioBuffer& buf) {
  // Shape must be spelled as a container: the count constructor leaves the
  // strides empty, which numpy reads as a stride-0 view.
  std::vector<py::ssize_t> shape = {static_cast<py::ssize_t>(buf.samples.size())};
  py::array_t<double> arr(shape);
  std::memcpy(arr.mutable_data(), buf.samples.data(), sizeof(double) * buf.samples.size());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "speech recognition core: DSP frontend, CTC, n-gram LM, scoring";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  // audio
  m.def(
      "decode_pcm",
      [](py::bytes wav) {
        AudioBuffer buf = DecodePcm(std::string(wav));
        return py::make_tuple(ArrayFromBuffer(buf), buf.sample_rate);
      },
      py::arg("wav_bytes"), "Decode 16-bit PCM WAV bytes to (samples, rate).");
  m.def(
      "encode_pcm",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int rate) {
        return py::bytes(EncodePcm(BufferFromArray(samples, rate)));
      },
      py::arg("samples"), py::arg("rate"));
  m.def(
      "resample",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int rate,
         int target_rate) { return ArrayFromBuffer(Resample(BufferFromArray(samples, rate), target_rate)); },
      py::arg("samples"), py::arg("rate"), py::arg("target_rate"));
  m.def(
      "highpass",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int rate,
         double cutoff_hz) { return ArrayFromBuffer(Highpass(BufferFromArray(samples, rate), cutoff_hz)); },
      py::arg("samples"), py::arg("rate"), py::arg("cutoff_hz") = 150.0);
  m.def(
      "segment",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int rate,
         double min_duration, double max_duration, double silence_threshold_db,
         double min_silence) {
        SegmentSpec spec{min_duration, max_duration, silence_threshold_db, min_silence};
        SegmentResult res = Segment(BufferFromArray(samples, rate), spec);
        std::vector<std::pair<double, double>> spans;
        for (const auto& s : res.spans) spans.emplace_back(s.start, s.end);
        return py::make_tuple(spans, res.rejections);
      },
      py::arg("samples"), py::arg("rate"), py::arg("min_duration") = 2.0,
      py::arg("max_duration") = 30.0, py::arg("silence_threshold_db") = -40.0,
      py::arg("min_silence") = 0.3, "Returns ([(start, end)...], [rejection reasons...]).");

  // features
  m.def(
      "spectrogram",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> samples, int rate,
         double frame_length, double frame_shift, bool normalize) {
        FeatureMatrix feat = Spectrogram(BufferFromArray(samples, rate), frame_length, frame_shift);
        if (normalize) feat = Normalize(feat);
        return ArrayFromMatrix(feat.frames);
      },
      py::arg("samples"), py::arg("rate"), py::arg("frame_length") = 0.02,
      py::arg("frame_shift") = 0.01, py::arg("normalize") = false);

  // text
  py::class_<Alphabet>(m, "Alphabet")
      .def(py::init<const std::vector<std::string>&>(), py::arg("symbols"))
      .def_static("load", &Alphabet::LoadFile, py::arg("path"))
      .def("__len__", &Alphabet::Size)
      .def_property_readonly("blank_index", &Alphabet::BlankIndex)
      .def_property_readonly("num_labels", &Alphabet::NumLabels)
      .def("symbol", &Alphabet::Symbol, py::arg("index"))
      .def("encode", &Alphabet::Encode, py::arg("text"))
      .def("decode", &Alphabet::Decode, py::arg("labels"));
  m.def(
      "normalize_text",
      [](const std::string& raw, const Alphabet& alphabet) {
        NormalizeResult res = NormalizeText(raw, NormalizationPolicy::Default(), alphabet);
        if (res.Ok()) return py::make_tuple(py::cast(res.text), py::none());
        return py::make_tuple(py::none(), py::cast(res.rejection->reason));
      },
      py::arg("raw"), py::arg("alphabet"),
      "Returns (normalized, None) or (None, rejection reason).");

  // ctc
  m.def(
      "ctc_loss",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> logprobs,
         const std::vector<int>& labels) {
        CtcLossResult res = CtcLoss(MatrixFromArray(logprobs), labels);
        return py::make_tuple(res.loss, res.feasible);
      },
      py::arg("logprobs"), py::arg("labels"), "Returns (loss, feasible).");
  m.def(
      "ctc_grad",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> logprobs,
         const std::vector<int>& labels) { return ArrayFromMatrix(CtcGrad(MatrixFromArray(logprobs), labels)); },
      py::arg("logprobs"), py::arg("labels"), "Gradient with respect to pre-softmax logits.");
  m.def(
      "greedy_decode",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> logprobs,
         const Alphabet& alphabet) { return GreedyDecode(MatrixFromArray(logprobs), alphabet); },
      py::arg("logprobs"), py::arg("alphabet"));
  m.def(
      "beam_search_decode",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> logprobs,
         const Alphabet& alphabet, const NGramModel* lm, int beam_width, double alpha,
         double beta) {
        DecoderConfig cfg{beam_width, alpha, beta};
        auto hyps = BeamSearchDecode(MatrixFromArray(logprobs), alphabet, lm, cfg);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& h : hyps) out.emplace_back(h.text, h.score);
        return out;
      },
      py::arg("logprobs"), py::arg("alphabet"), py::arg("lm") = nullptr,
      py::arg("beam_width") = 512, py::arg("alpha") = 1.5, py::arg("beta") = 1.0,
      "Ranked (text, score) hypotheses.");

  // language model
  py::class_<NGramModel>(m, "NGramModel")
      .def_readonly("order", &NGramModel::order)
      .def_readonly("vocab", &NGramModel::vocab)
      .def("log_prob", &NGramModel::LogProb, py::arg("context"), py::arg("word"),
           "log10 P(word | context)")
      .def("score", &NGramModel::ScoreSentence, py::arg("sentence"))
      .def("perplexity", &NGramModel::Perplexity, py::arg("sentences"))
      .def("to_arpa", [](const NGramModel& model) { return ExportArpa(model); })
      .def_static("train",
                  [](const std::vector<std::string>& sentences, int order) {
                    return TrainKneserNeyText(sentences, order);
                  },
                  py::arg("sentences"), py::arg("order") = 4)
      .def_static("from_arpa", [](const std::string& text) { return ImportArpa(text); },
                  py::arg("text"))
      .def_static("load", &ImportArpaFile, py::arg("path"));

  // evaluation
  m.def(
      "wer",
      [](const std::string& ref, const std::string& hyp) {
        WerReport r = WordErrorRate(ref, hyp);
        py::dict d;
        d["substitutions"] = r.substitutions;
        d["deletions"] = r.deletions;
        d["insertions"] = r.insertions;
        d["reference_words"] = r.reference_tokens;
        d["wer"] = r.Rate();
        return d;
      },
      py::arg("reference"), py::arg("hypothesis"));
  m.def(
      "cer",
      [](const std::string& ref, const std::string& hyp) {
        WerReport r = CharErrorRate(ref, hyp);
        py::dict d;
        d["substitutions"] = r.substitutions;
        d["deletions"] = r.deletions;
        d["insertions"] = r.insertions;
        d["reference_chars"] = r.reference_tokens;
        d["cer"] = r.Rate();
        return d;
      },
      py::arg("reference"), py::arg("hypothesis"));
  m.def(
      "paired_t_test",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        TTestResult r = PairedTTest(a, b);
        return py::make_tuple(r.t, r.p, r.df);
      },
      py::arg("scores_a"), py::arg("scores_b"), "Returns (t, p, df).");

  // acoustic model inference from a checkpoint
  py::class_<Checkpoint>(m, "AcousticModel")
      .def_static("load",
                  [](const std::string& path) {
                    auto ck = std::make_unique<Checkpoint>(LoadCheckpoint(path));
                    return ck;
                  },
                  py::arg("path"))
      .def_property_readonly("epoch", [](const Checkpoint& ck) { return ck.epoch; })
      .def_property_readonly("alphabet",
                             [](const Checkpoint& ck) { return ck.alphabet; })
      .def_property_readonly(
          "param_count",
          [](const Checkpoint& ck) { return ck.net->ParamCount(); })
      .def(
          "forward",
          [](Checkpoint& ck, py::array_t<double, py::array::c_style | py::array::forcecast> feats) {
            Matrix f = MatrixFromArray(feats);
            std::vector<const Matrix*> batch = {&f};
            return ArrayFromMatrix(ck.net->Forward(batch, NetMode::kInfer)[0]);
          },
          py::arg("features"), "Log-probabilities for normalized T x F features.");

  m.def("clipped_relu", [](double x) { return ClippedRelu(x); }, py::arg("x"));
  m.def(
      "conv_output_shape",
      [](std::pair<int, int> freq_time, int stride_f, int stride_t) {
        ConvLayerSpec spec;
        spec.stride_f = stride_f;
        spec.stride_t = stride_t;
        return ConvOutputShape(freq_time, spec);
      },
      py::arg("freq_time"), py::arg("stride_f"), py::arg("stride_t"));
}
