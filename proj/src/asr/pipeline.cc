// asr/pipeline.cc

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

#include "asr/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include "asr/audio.h"
#include "asr/checkpoint.h"
#include "asr/common.h"
#include "asr/corpus.h"
#include "asr/ctc.h"
#include "asr/eval.h"
#include "asr/features.h"
#include "asr/lm.h"
#include "asr/text.h"
#include "asr/trainer.h"

namespace fs = std::filesystem;

namespace asr {

namespace {

// Bounded worker pool; rethrows the first worker exception after joining.
void ParallelFor(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; i++) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mu;
  auto worker = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(threads, n); w++) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

PipelineConfig ResolveConfig(const std::string& config_path) {
  if (config_path.empty()) return DefaultConfig();
  PipelineConfig cfg = LoadConfig(config_path);
  // Paths in the file resolve relative to the file's directory.
  fs::path base = fs::path(config_path).parent_path();
  auto resolve = [&](std::string* p) {
    if (!p->empty() && fs::path(*p).is_relative()) *p = (base / *p).string();
  };
  resolve(&cfg.alphabet_path);
  resolve(&cfg.lm_path);
  return cfg;
}

std::string FormatScore(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(StrCat("cannot open ", path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

struct PreparedUtterance {
  ManifestEntry entry;
  AudioBuffer audio;
};

struct PrepareFileResult {
  std::vector<PreparedUtterance> accepted;
  std::vector<std::array<std::string, 3>> rejections;  // id, offending, reason
};

PrepareFileResult PrepareOneFile(const fs::path& wav_path, const PipelineConfig& cfg,
                                 const Alphabet& alphabet, const NormalizationPolicy& policy) {
  PrepareFileResult res;
  const std::string stem = wav_path.stem().string();
  fs::path txt_path = wav_path;
  txt_path.replace_extension(".txt");
  if (!fs::exists(txt_path)) {
    res.rejections.push_back({stem, "", "missing transcript file"});
    return res;
  }

  AudioBuffer audio;
  try {
    audio = DecodePcmFile(wav_path.string());
  } catch (const Error& e) {
    res.rejections.push_back({stem, "", StrCat("unreadable audio: ", e.what())});
    return res;
  }
  audio = Resample(audio, cfg.target_rate);
  audio = Highpass(audio, cfg.highpass_hz);

  SegmentResult seg;
  try {
    seg = Segment(audio, cfg.segment);
  } catch (const Error& e) {
    res.rejections.push_back({stem, "", StrCat("segmentation failed: ", e.what())});
    return res;
  }
  for (const auto& r : seg.rejections) res.rejections.push_back({stem, "", r});
  if (seg.spans.empty()) return res;

  std::vector<std::string> transcripts;
  for (const auto& line : ReadLines(txt_path.string()))
    if (!line.empty()) transcripts.push_back(line);
  if (transcripts.size() != seg.spans.size()) {
    res.rejections.push_back(
        {stem, "",
         StrCat("transcript has ", transcripts.size(), " line(s) but audio segments into ",
                seg.spans.size(), "; cannot align")});
    return res;
  }

  for (size_t k = 0; k < seg.spans.size(); k++) {
    char suffix[32];
    std::snprintf(suffix, sizeof(suffix), "-%03zu", k);
    const std::string id = stem + suffix;
    NormalizeResult norm = NormalizeText(transcripts[k], policy, alphabet);
    if (!norm.Ok()) {
      res.rejections.push_back({id, norm.rejection->offending, norm.rejection->reason});
      continue;
    }
    if (norm.text.empty()) {
      res.rejections.push_back({id, "", "empty transcript after normalization"});
      continue;
    }
    PreparedUtterance utt;
    utt.entry.id = id;
    utt.entry.audio_path = "audio/" + id + ".wav";
    utt.entry.duration = seg.spans[k].end - seg.spans[k].start;
    utt.entry.transcript = norm.text;
    utt.audio = Slice(audio, seg.spans[k].start, seg.spans[k].end);
    res.accepted.push_back(std::move(utt));
  }
  return res;
}

}  // namespace

int CmdPrepare(const PrepareArgs& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg = ResolveConfig(args.config_path);
  Alphabet alphabet = Alphabet::LoadFile(cfg.alphabet_path);
  NormalizationPolicy policy = NormalizationPolicy::Default();

  if (!fs::is_directory(args.raw_dir))
    throw DataError(StrCat("prepare: raw directory '", args.raw_dir, "' does not exist"));
  std::vector<fs::path> wavs;
  for (const auto& entry : fs::directory_iterator(args.raw_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      wavs.push_back(entry.path());
  }
  std::sort(wavs.begin(), wavs.end());
  if (wavs.empty()) throw DataError(StrCat("prepare: no .wav files in ", args.raw_dir));

  fs::create_directories(fs::path(args.out_dir) / "audio");

  std::vector<PrepareFileResult> results(wavs.size());
  ParallelFor(static_cast<int>(wavs.size()), cfg.threads, [&](int i) {
    results[i] = PrepareOneFile(wavs[i], cfg, alphabet, policy);
  });

  std::vector<ManifestEntry> entries;
  int64_t rejected = 0;
  double hours = 0.0;
  std::ofstream rej((fs::path(args.out_dir) / "rejections.tsv").string(), std::ios::binary);
  if (!rej) throw Error("prepare: cannot write rejection log");
  for (auto& res : results) {
    for (auto& r : res.rejections) {
      rej << r[0] << "\t" << r[1] << "\t" << r[2] << "\n";
      rejected++;
      err << "reject " << r[0] << ": " << r[2] << "\n";
    }
    for (auto& utt : res.accepted) {
      EncodePcmFile((fs::path(args.out_dir) / utt.entry.audio_path).string(), utt.audio);
      hours += utt.entry.duration / 3600.0;
      entries.push_back(std::move(utt.entry));
    }
  }
  SaveManifest((fs::path(args.out_dir) / "manifest.tsv").string(), entries);

  char hours_buf[32];
  std::snprintf(hours_buf, sizeof(hours_buf), "%.3f", hours);
  out << "accepted " << entries.size() << " utterance(s), " << hours_buf << " hour(s); rejected "
      << rejected << " item(s); total inputs " << wavs.size() << "\n";
  if (entries.empty()) throw DataError("prepare: no utterances accepted");
  return kExitOk;
}

namespace {

std::vector<TrainItem> MaterializeItems(const std::string& manifest_path,
                                        const PipelineConfig& cfg, const Alphabet& alphabet,
                                        const std::string& cache_dir, std::ostream& err) {
  ManifestLoad load = LoadManifest(manifest_path, {.warn_min = cfg.segment.min_duration,
                                                   .warn_max = cfg.segment.max_duration});
  for (const auto& w : load.warnings) err << "warning: " << w << "\n";
  const fs::path base = fs::path(manifest_path).parent_path();
  if (!cache_dir.empty()) fs::create_directories(cache_dir);

  std::vector<TrainItem> items(load.entries.size());
  std::vector<std::string> errors(load.entries.size());
  ParallelFor(static_cast<int>(load.entries.size()), cfg.threads, [&](int i) {
    const ManifestEntry& e = load.entries[i];
    try {
      items[i].id = e.id;
      items[i].duration = e.duration;
      items[i].labels = alphabet.Encode(e.transcript);
      fs::path cache_file;
      if (!cache_dir.empty()) {
        cache_file = fs::path(cache_dir) / (e.id + ".feat");
        if (fs::exists(cache_file)) {
          items[i].features = ReadFeatureCache(cache_file.string()).frames;
          return;
        }
      }
      AudioBuffer audio = DecodePcmFile((base / e.audio_path).string());
      audio = Resample(audio, cfg.target_rate);
      FeatureMatrix feat =
          Normalize(Spectrogram(audio, cfg.frame_length, cfg.frame_shift));
      if (!cache_dir.empty()) WriteFeatureCache(cache_file.string(), feat);
      items[i].features = std::move(feat.frames);
    } catch (const Error& ex) {
      errors[i] = StrCat(e.id, ": ", ex.what());
    }
  });
  std::string problems;
  for (const auto& m : errors)
    if (!m.empty()) problems += "\n  " + m;
  if (!problems.empty()) throw DataError(StrCat("feature extraction failed:", problems));
  return items;
}

// Deterministic 90/10-style dev carve-out keyed on id hashes.
void CarveDev(std::vector<TrainItem>* train, std::vector<TrainItem>* dev, double fraction,
              uint64_t seed) {
  if (fraction <= 0.0 || train->size() < 2) {
    *dev = *train;  // dev mirrors train (toy overfit setups)
    return;
  }
  std::vector<size_t> order(train->size());
  for (size_t i = 0; i < order.size(); i++) order[i] = i;
  std::vector<uint64_t> key(train->size());
  for (size_t i = 0; i < train->size(); i++)
    key[i] = Fnv1a64((*train)[i].id, Fnv1a64Bytes(&seed, sizeof(seed)));
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return key[a] < key[b]; });
  size_t n_dev = std::max<size_t>(1, static_cast<size_t>(std::floor(
                                          fraction * static_cast<double>(train->size()))));
  std::vector<TrainItem> new_train, new_dev;
  for (size_t i = 0; i < order.size(); i++) {
    if (i < n_dev) {
      new_dev.push_back(std::move((*train)[order[i]]));
    } else {
      new_train.push_back(std::move((*train)[order[i]]));
    }
  }
  *train = std::move(new_train);
  *dev = std::move(new_dev);
}

}  // namespace

int CmdTrain(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg = ResolveConfig(args.config_path);
  if (args.epochs) cfg.epochs = *args.epochs;
  if (args.batch_size) cfg.batch_size = *args.batch_size;
  if (args.patience) cfg.patience = *args.patience;
  if (args.seed) cfg.seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;
  cfg.arch.seed = cfg.seed;
  SetBlasThreads(cfg.threads);

  Alphabet alphabet = Alphabet::LoadFile(cfg.alphabet_path);
  cfg.arch.num_labels = alphabet.NumLabels();

  std::vector<TrainItem> train = MaterializeItems(args.manifest, cfg, alphabet, args.cache_dir, err);
  std::vector<TrainItem> dev;
  if (!args.dev_manifest.empty()) {
    dev = MaterializeItems(args.dev_manifest, cfg, alphabet, args.cache_dir, err);
  } else {
    CarveDev(&train, &dev, cfg.dev_fraction, cfg.seed);
  }

  std::unique_ptr<AcousticNet> net;
  AdamState adam;
  int start_epoch = 0;
  if (!args.resume.empty()) {
    Checkpoint ck = LoadCheckpoint(args.resume);
    if (ck.alphabet_hash != alphabet.Hash())
      throw DataError("train: checkpoint alphabet does not match the configured alphabet");
    if (ArchToJson(ck.arch) != ArchToJson(cfg.arch))
      throw DataError("train: checkpoint architecture does not match the configuration");
    net = std::move(ck.net);
    adam = std::move(ck.adam);
    start_epoch = ck.epoch;
    err << "resuming from " << args.resume << " at epoch " << start_epoch << "\n";
  } else {
    net.reset(new AcousticNet(cfg.arch));
    adam.Init(net->Params().size());
  }

  TrainOptions opts;
  opts.epochs = cfg.epochs;
  opts.batch_size = cfg.batch_size;
  opts.patience = cfg.patience;
  opts.seed = cfg.seed;
  opts.lr = cfg.lr;
  opts.log = &err;
  opts.checkpoint_path = args.checkpoint_out;
  opts.alphabet = &alphabet;
  opts.start_epoch = start_epoch;

  TrainResult result = Train(net.get(), &adam, train, dev, opts);
  if (result.epochs.empty() && start_epoch >= cfg.epochs) {
    // Resumed past the end; still write the checkpoint for idempotence.
    SaveCheckpoint(args.checkpoint_out, *net, adam, alphabet, start_epoch);
  }
  out << "trained " << result.epochs.size() << " epoch(s); best dev loss " << result.best_dev_loss
      << " at epoch " << result.best_epoch << "\n";
  return kExitOk;
}

namespace {

struct DecodedUtterance {
  std::string id;
  DecodedHyp best;
};

}  // namespace

int CmdDecode(const DecodeArgs& args, std::ostream& out, std::ostream& err) {
  (void)out;  // hypotheses go to the output file
  PipelineConfig cfg = ResolveConfig(args.config_path);
  if (args.beam_width) cfg.decoder.beam_width = *args.beam_width;
  if (args.alpha) cfg.decoder.alpha = *args.alpha;
  if (args.beta) cfg.decoder.beta = *args.beta;
  if (args.threads) cfg.threads = *args.threads;
  SetBlasThreads(1);  // utterance-level parallelism below

  Checkpoint ck = LoadCheckpoint(args.checkpoint);
  const Alphabet& alphabet = ck.alphabet;

  std::string lm_path = !args.lm_path.empty() ? args.lm_path : cfg.lm_path;
  std::unique_ptr<NGramModel> lm;
  if (!lm_path.empty()) {
    lm.reset(new NGramModel(ImportArpaFile(lm_path)));
    if (lm->has_alphabet_hash && lm->alphabet_hash != ck.alphabet_hash)
      throw DataError("decode: LM was built for a different alphabet than the checkpoint");
  }
  if (cfg.decoder.alpha != 0.0 && !args.greedy && lm == nullptr)
    throw ConfigError("decode: alpha > 0 requires a language model (--lm)");

  ManifestLoad load = LoadManifest(args.manifest, {.warn_min = 0.0, .warn_max = 1e9});
  const fs::path base = fs::path(args.manifest).parent_path();

  std::vector<DecodedUtterance> decoded(load.entries.size());
  std::vector<std::string> errors(load.entries.size());
  ParallelFor(static_cast<int>(load.entries.size()), cfg.threads, [&](int i) {
    const ManifestEntry& e = load.entries[i];
    try {
      AudioBuffer audio = DecodePcmFile((base / e.audio_path).string());
      audio = Resample(audio, cfg.target_rate);
      FeatureMatrix feat = Normalize(Spectrogram(audio, cfg.frame_length, cfg.frame_shift));
      std::vector<const Matrix*> batch = {&feat.frames};
      std::vector<Matrix> logprobs = ck.net->Forward(batch, NetMode::kInfer);
      decoded[i].id = e.id;
      if (args.greedy) {
        decoded[i].best.text = GreedyDecode(logprobs[0], alphabet);
      } else {
        auto hyps = BeamSearchDecode(logprobs[0], alphabet, lm.get(), cfg.decoder);
        decoded[i].best = hyps.front();
      }
    } catch (const Error& ex) {
      errors[i] = StrCat(e.id, ": ", ex.what());
    }
  });
  std::string problems;
  for (const auto& m : errors)
    if (!m.empty()) problems += "\n  " + m;
  if (!problems.empty()) throw DataError(StrCat("decode failed:", problems));

  std::ofstream tsv(args.out_path, std::ios::binary);
  if (!tsv) throw Error(StrCat("decode: cannot write ", args.out_path));
  for (const auto& d : decoded) {
    tsv << d.id << "\t" << d.best.text << "\t" << FormatScore(d.best.acoustic) << "\t"
        << FormatScore(d.best.lm) << "\t" << FormatScore(d.best.score) << "\n";
  }
  if (!tsv) throw Error("decode: short write");
  err << "decoded " << decoded.size() << " utterance(s)\n";
  return kExitOk;
}

std::vector<std::pair<std::string, std::string>> ReadTranscriptTsv(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& line : ReadLines(path)) {
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw FormatError(StrCat(path, ": expected at least 2 tab-separated columns"));
    size_t tab2 = line.find('\t', tab + 1);
    std::string text = tab2 == std::string::npos ? line.substr(tab + 1)
                                                 : line.substr(tab + 1, tab2 - tab - 1);
    rows.emplace_back(line.substr(0, tab), text);
  }
  return rows;
}

int CmdEval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  auto refs = ReadTranscriptTsv(args.ref_path);
  if (refs.empty()) throw DataError(StrCat("eval: no reference utterances in ", args.ref_path));
  auto hyp_rows = ReadTranscriptTsv(args.hyp_path);
  std::map<std::string, std::string> hyps(hyp_rows.begin(), hyp_rows.end());

  auto score_system = [&](const std::map<std::string, std::string>& hyp_map,
                          std::vector<double>* per_utt) {
    WerReport total;
    for (const auto& [id, ref] : refs) {
      auto it = hyp_map.find(id);
      if (it == hyp_map.end())
        throw DataError(StrCat("eval: utterance '", id, "' missing from hypothesis file"));
      WerReport r = args.cer ? CharErrorRate(ref, it->second) : WordErrorRate(ref, it->second);
      if (per_utt) per_utt->push_back(r.Rate());
      total += r;
    }
    return total;
  };

  std::vector<double> per_utt_a;
  WerReport total = score_system(hyps, &per_utt_a);
  const char* metric = args.cer ? "CER" : "WER";
  out << "S=" << total.substitutions << "\n";
  out << "D=" << total.deletions << "\n";
  out << "I=" << total.insertions << "\n";
  out << "N=" << total.reference_tokens << "\n";
  char rate_buf[32];
  std::snprintf(rate_buf, sizeof(rate_buf), "%.4f", total.Rate());
  out << metric << "=" << rate_buf << "\n";
  std::snprintf(rate_buf, sizeof(rate_buf), "%.2f", 100.0 * total.Rate());
  err << metric << " " << rate_buf << "% over " << refs.size() << " utterance(s)\n";

  if (!args.compare_path.empty()) {
    auto rows_b = ReadTranscriptTsv(args.compare_path);
    std::map<std::string, std::string> hyps_b(rows_b.begin(), rows_b.end());
    std::vector<double> per_utt_b;
    WerReport total_b = score_system(hyps_b, &per_utt_b);
    std::snprintf(rate_buf, sizeof(rate_buf), "%.4f", total_b.Rate());
    out << metric << "_B=" << rate_buf << "\n";
    TTestResult t = PairedTTest(per_utt_a, per_utt_b);
    out << "t=" << FormatScore(t.t) << "\n";
    out << "p=" << FormatScore(t.p) << "\n";
    out << "df=" << t.df << "\n";
  }
  return kExitOk;
}

int CmdLmTrain(const LmTrainArgs& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg = ResolveConfig(args.config_path);
  if (args.order) cfg.lm_order = *args.order;

  Alphabet alphabet = Alphabet::LoadFile(cfg.alphabet_path);
  NormalizationPolicy policy = NormalizationPolicy::Default();

  std::vector<std::string> lines;
  int64_t rejected = 0;
  for (const auto& raw : ReadLines(args.corpus_path)) {
    if (raw.empty()) continue;
    if (args.skip_normalize) {
      lines.push_back(raw);
      continue;
    }
    NormalizeResult norm = NormalizeText(raw, policy, alphabet);
    if (!norm.Ok() || norm.text.empty()) {
      rejected++;
      continue;
    }
    lines.push_back(norm.text);
  }
  if (lines.empty()) throw DataError("lm-train: no usable sentences in corpus");

  NGramModel model = TrainKneserNeyText(lines, cfg.lm_order);
  model.alphabet_hash = alphabet.Hash();
  model.has_alphabet_hash = true;
  ExportArpaFile(args.out_path, model);
  out << "trained order-" << cfg.lm_order << " model on " << lines.size() << " sentence(s), "
      << model.vocab.size() << " vocabulary entries; skipped " << rejected << "\n";
  err << "wrote " << args.out_path << "\n";
  return kExitOk;
}

int CmdTune(const TuneArgs& args, std::ostream& out, std::ostream& err) {
  PipelineConfig cfg = ResolveConfig(args.config_path);
  if (args.beam_width) cfg.decoder.beam_width = *args.beam_width;
  if (args.threads) cfg.threads = *args.threads;
  if (args.alphas.empty() || args.betas.empty())
    throw ConfigError("tune: need at least one alpha and one beta");
  SetBlasThreads(1);

  Checkpoint ck = LoadCheckpoint(args.checkpoint);
  NGramModel lm = ImportArpaFile(args.lm_path);
  if (lm.has_alphabet_hash && lm.alphabet_hash != ck.alphabet_hash)
    throw DataError("tune: LM was built for a different alphabet than the checkpoint");

  ManifestLoad load = LoadManifest(args.manifest, {.warn_min = 0.0, .warn_max = 1e9});
  const fs::path base = fs::path(args.manifest).parent_path();

  // One acoustic pass per utterance, reused across the whole grid.
  std::vector<Matrix> logprobs(load.entries.size());
  ParallelFor(static_cast<int>(load.entries.size()), cfg.threads, [&](int i) {
    const ManifestEntry& e = load.entries[i];
    AudioBuffer audio = DecodePcmFile((base / e.audio_path).string());
    audio = Resample(audio, cfg.target_rate);
    FeatureMatrix feat = Normalize(Spectrogram(audio, cfg.frame_length, cfg.frame_shift));
    std::vector<const Matrix*> batch = {&feat.frames};
    logprobs[i] = ck.net->Forward(batch, NetMode::kInfer)[0];
  });

  double best_wer = std::numeric_limits<double>::infinity();
  double best_alpha = args.alphas[0], best_beta = args.betas[0];
  for (double alpha : args.alphas) {
    for (double beta : args.betas) {
      DecoderConfig dc = cfg.decoder;
      dc.alpha = alpha;
      dc.beta = beta;
      WerReport total;
      std::vector<WerReport> reports(load.entries.size());
      ParallelFor(static_cast<int>(load.entries.size()), cfg.threads, [&](int i) {
        auto hyps = BeamSearchDecode(logprobs[i], ck.alphabet, &lm, dc);
        reports[i] = WordErrorRate(load.entries[i].transcript, hyps.front().text);
      });
      for (const auto& r : reports) total += r;
      char buf[64];
      std::snprintf(buf, sizeof(buf), "alpha=%.3f beta=%.3f WER=%.4f", alpha, beta, total.Rate());
      out << buf << "\n";
      if (total.Rate() < best_wer) {
        best_wer = total.Rate();
        best_alpha = alpha;
        best_beta = beta;
      }
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "best: alpha=%.3f beta=%.3f WER=%.4f", best_alpha, best_beta,
                best_wer);
  out << buf << "\n";
  err << "tuned over " << args.alphas.size() * args.betas.size() << " grid point(s)\n";
  return kExitOk;
}

}  // namespace asr
