// asr/net.h

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

#ifndef ASR_NET_H_
#define ASR_NET_H_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asr/matrix.h"

namespace asr {

enum class RnnCell { kGru, kLstm };
enum class NetMode { kTrain, kInfer };

struct ConvLayerSpec {
  int filters = 32;
  int kernel_f = 41, kernel_t = 11;
  int stride_f = 2, stride_t = 2;
  bool batchnorm = true;
};

struct RnnLayerSpec {
  RnnCell cell = RnnCell::kGru;
  int width = 768;       // hidden units per direction; always bidirectional
  double dropout = 0.2;  // on layer outputs, train mode only
};

struct NetConfig {
  int input_bins = 161;  // frequency bins from the frontend
  int num_labels = 0;    // |alphabet symbols| + 1 (blank)
  std::vector<ConvLayerSpec> conv;
  std::vector<RnnLayerSpec> rnn;
  uint64_t seed = 1;

  // Two convolutional layers followed by four bidirectional GRU layers.
  static NetConfig Reference(int num_labels, int width = 768);

  bool operator==(const NetConfig&) const = default;
};

inline double ClippedRelu(double x) { return std::min(std::max(x, 0.0), 20.0); }

// Output extents under "same" zero-padding: ceil(extent / stride).
std::pair<int, int> ConvOutputShape(std::pair<int, int> freq_time, const ConvLayerSpec& spec);

// Uniform on +-sqrt(6 / (fan_in + fan_out)), deterministic per seed.
void XavierFill(std::span<double> w, int fan_in, int fan_out, uint64_t seed);

inline constexpr double kBatchNormEps = 1e-5;
inline constexpr double kBatchNormMomentum = 0.9;

// Population mean/variance of one channel's values.
void MeanVar(std::span<const double> x, double* mean, double* var);

// y = (x - mean) / sqrt(var + eps) * gamma + beta; the conv stack applies
// this with batch statistics in train mode and running statistics at
// inference.
void BatchNormApply(std::span<const double> x, double mean, double var, double gamma, double beta,
                    std::span<double> y);

// Convolutional-recurrent acoustic model: conv stack (BatchNorm + clipped
// ReLU) -> bidirectional RNN stack -> dense -> log-softmax. Parameters live
// in one flat buffer in declaration order (conv W, b, gamma, beta; per RNN
// direction Wx, Wh, b; dense W, b), which checkpoints and the optimizer
// share.
class AcousticNet {
 public:
  explicit AcousticNet(const NetConfig& config);

  const NetConfig& Config() const { return config_; }
  static int64_t ParamCount(const NetConfig& config);
  int64_t ParamCount() const { return static_cast<int64_t>(params_.size()); }

  std::span<double> Params() { return params_; }
  std::span<const double> Params() const { return params_; }
  // BatchNorm running mean/variance, one pair of vectors per conv layer.
  std::span<double> RunningStats() { return running_; }
  std::span<const double> RunningStats() const { return running_; }

  // Number of output frames for an input of T feature frames.
  int OutputFrames(int frames) const;

  struct BatchContext;
  struct BatchContextDeleter {
    void operator()(BatchContext*) const;
  };
  using BatchContextPtr = std::unique_ptr<BatchContext, BatchContextDeleter>;
  static BatchContextPtr NewContext();

  // feats: per-item T_i x F matrices. Returns per-item T'_i x num_labels
  // log-probability rows. In train mode with ctx non-null, intermediates
  // are recorded for Backward. dropout_seed fixes the dropout masks.
  std::vector<Matrix> Forward(const std::vector<const Matrix*>& feats, NetMode mode,
                              uint64_t dropout_seed = 0, BatchContext* ctx = nullptr,
                              bool update_running_stats = false);

  // Accumulates parameter gradients into grad given the gradient of the
  // loss with respect to the log-probabilities.
  void Backward(const BatchContext& ctx, const std::vector<Matrix>& dlogprobs,
                std::span<double> grad);

  // Rounds parameters and running stats through the 32-bit storage grid so
  // the in-memory state equals a freshly loaded checkpoint.
  void SnapToStorage();

  ~AcousticNet();

  struct Impl;  // layout table; public so free helpers in net.cc can use it

 private:
  NetConfig config_;
  std::vector<double> params_;
  std::vector<double> running_;
  std::unique_ptr<Impl> impl_;
};

// Single cells, exposed for unit tests. Weights: wx [G*H x I] stacked gate
// blocks, wh [G*H x H], bias [G*H]; GRU gates z, r, candidate; LSTM gates
// i, f, o, g.
void GruCellStep(const MatView& wx, const MatView& wh, const double* bias, const double* x,
                 const double* h_prev, int input_dim, int width, double* h_out);
void LstmCellStep(const MatView& wx, const MatView& wh, const double* bias, const double* x,
                  const double* h_prev, const double* c_prev, int input_dim, int width,
                  double* h_out, double* c_out);

}  // namespace asr

#endif  // ASR_NET_H_
