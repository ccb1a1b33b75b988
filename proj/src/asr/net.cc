// asr/net.cc

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

#include "asr/net.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "asr/common.h"

namespace asr {

void MeanVar(std::span<const double> x, double* mean, double* var) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  *mean = m;
  *var = ss / static_cast<double>(x.size());
}

void BatchNormApply(std::span<const double> x, double mean, double var, double gamma, double beta,
                    std::span<double> y) {
  const double scale = gamma / std::sqrt(var + kBatchNormEps);
  for (size_t i = 0; i < x.size(); i++) y[i] = (x[i] - mean) * scale + beta;
}

namespace {

// im2col scratch budget per GEMM chunk.
constexpr size_t kColChunkDoubles = size_t{4} << 20;

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Tensor3 {  // [C][F][T] row-major in that nesting
  int c = 0, f = 0, t = 0;
  std::vector<double> v;
  void Resize(int c_, int f_, int t_) {
    c = c_;
    f = f_;
    t = t_;
    v.assign(static_cast<size_t>(c_) * f_ * t_, 0.0);
  }
  double* Chan(int ci) { return v.data() + static_cast<size_t>(ci) * f * t; }
  const double* Chan(int ci) const { return v.data() + static_cast<size_t>(ci) * f * t; }
  size_t Size() const { return v.size(); }
};

struct Padding {
  int f = 0, t = 0;  // leading pads ("same": total pad split, extra at the end)
};

Padding SamePadding(int F, int T, const ConvLayerSpec& s, int Fo, int To) {
  int total_f = std::max(0, (Fo - 1) * s.stride_f + s.kernel_f - F);
  int total_t = std::max(0, (To - 1) * s.stride_t + s.kernel_t - T);
  return {total_f / 2, total_t / 2};
}

// Gathers patch columns for flattened output positions [p0, p1).
void Im2Col(const Tensor3& in, const ConvLayerSpec& s, int To, Padding pad, int p0,
            int p1, double* cols) {
  const int kf = s.kernel_f, kt = s.kernel_t;
  const int n = p1 - p0;
  const int rows = in.c * kf * kt;
  for (int r = 0; r < rows; r++) {
    const int ci = r / (kf * kt);
    const int df = (r / kt) % kf;
    const int dt = r % kt;
    const double* src = in.Chan(ci);
    double* dst = cols + static_cast<size_t>(r) * n;
    for (int j = 0; j < n; j++) {
      const int p = p0 + j;
      const int fo = p / To;
      const int to = p % To;
      const int fi = fo * s.stride_f + df - pad.f;
      const int ti = to * s.stride_t + dt - pad.t;
      dst[j] = (fi >= 0 && fi < in.f && ti >= 0 && ti < in.t)
                   ? src[static_cast<size_t>(fi) * in.t + ti]
                   : 0.0;
    }
  }
}

// Scatter-add transpose of Im2Col.
void Col2Im(const double* cols, const ConvLayerSpec& s, int To, Padding pad, int p0,
            int p1, Tensor3* din) {
  const int kf = s.kernel_f, kt = s.kernel_t;
  const int n = p1 - p0;
  const int rows = din->c * kf * kt;
  for (int r = 0; r < rows; r++) {
    const int ci = r / (kf * kt);
    const int df = (r / kt) % kf;
    const int dt = r % kt;
    double* dst = din->Chan(ci);
    const double* src = cols + static_cast<size_t>(r) * n;
    for (int j = 0; j < n; j++) {
      const int p = p0 + j;
      const int fo = p / To;
      const int to = p % To;
      const int fi = fo * s.stride_f + df - pad.f;
      const int ti = to * s.stride_t + dt - pad.t;
      if (fi >= 0 && fi < din->f && ti >= 0 && ti < din->t)
        dst[static_cast<size_t>(fi) * din->t + ti] += src[j];
    }
  }
}

int NumGates(RnnCell cell) { return cell == RnnCell::kGru ? 3 : 4; }

}  // namespace

NetConfig NetConfig::Reference(int num_labels, int width) {
  NetConfig cfg;
  cfg.input_bins = 161;
  cfg.num_labels = num_labels;
  cfg.conv = {
      {32, 41, 11, 2, 2, true},
      {32, 21, 11, 2, 1, true},
  };
  cfg.rnn.assign(4, RnnLayerSpec{RnnCell::kGru, width, 0.2});
  return cfg;
}

std::pair<int, int> ConvOutputShape(std::pair<int, int> freq_time, const ConvLayerSpec& spec) {
  if (spec.kernel_f < 1 || spec.kernel_t < 1 || spec.stride_f < 1 || spec.stride_t < 1)
    throw ConfigError("conv: kernel and stride extents must be >= 1");
  auto [f, t] = freq_time;
  return {(f + spec.stride_f - 1) / spec.stride_f, (t + spec.stride_t - 1) / spec.stride_t};
}

void XavierFill(std::span<double> w, int fan_in, int fan_out, uint64_t seed) {
  if (fan_in + fan_out <= 0) throw ConfigError("xavier: non-positive fan");
  const double bound = std::sqrt(6.0 / (fan_in + fan_out));
  Rng rng(seed);
  for (double& x : w) x = rng.Uniform(-bound, bound);
}

// ---------------------------------------------------------------------------
// Layout

struct AcousticNet::Impl {
  struct ConvLayer {
    ConvLayerSpec spec;
    int in_channels = 1;
    int64_t w = 0, b = 0, gamma = -1, beta = -1;  // offsets into params
    int64_t run_mean = -1, run_var = -1;          // offsets into running stats
    int WRows() const { return spec.filters; }
    int WCols() const { return in_channels * spec.kernel_f * spec.kernel_t; }
  };
  struct RnnDir {
    int64_t wx = 0, wh = 0, b = 0;
  };
  struct RnnLayer {
    RnnLayerSpec spec;
    int input_dim = 0;
    std::array<RnnDir, 2> dir;
  };

  std::vector<ConvLayer> conv;
  std::vector<RnnLayer> rnn;
  int64_t dense_w = 0, dense_b = 0;
  int dense_in = 0;
  int conv_out_channels = 1;
  int conv_out_bins = 0;
  int64_t param_count = 0;
  int64_t running_count = 0;
};

static void BuildLayout(const NetConfig& cfg, AcousticNet::Impl* impl) {
  if (cfg.num_labels < 2) throw ConfigError("net: num_labels must be at least 2");
  if (cfg.input_bins < 1) throw ConfigError("net: input_bins must be positive");
  for (const auto& r : cfg.rnn) {
    if (r.width < 1) throw ConfigError("net: rnn width must be positive");
    if (r.dropout < 0.0 || r.dropout >= 1.0) throw ConfigError("net: dropout outside [0, 1)");
  }

  int64_t off = 0;
  int64_t roff = 0;
  int channels = 1;
  int bins = cfg.input_bins;
  for (const auto& spec : cfg.conv) {
    AcousticNet::Impl::ConvLayer layer;
    layer.spec = spec;
    layer.in_channels = channels;
    layer.w = off;
    off += static_cast<int64_t>(layer.WRows()) * layer.WCols();
    layer.b = off;
    off += spec.filters;
    if (spec.batchnorm) {
      layer.gamma = off;
      off += spec.filters;
      layer.beta = off;
      off += spec.filters;
      layer.run_mean = roff;
      roff += spec.filters;
      layer.run_var = roff;
      roff += spec.filters;
    }
    impl->conv.push_back(layer);
    bins = ConvOutputShape({bins, 1}, spec).first;
    channels = spec.filters;
  }
  impl->conv_out_channels = channels;
  impl->conv_out_bins = bins;

  int dim = channels * bins;
  for (const auto& spec : cfg.rnn) {
    AcousticNet::Impl::RnnLayer layer;
    layer.spec = spec;
    layer.input_dim = dim;
    const int gh = NumGates(spec.cell) * spec.width;
    for (int d = 0; d < 2; d++) {
      layer.dir[d].wx = off;
      off += static_cast<int64_t>(gh) * dim;
      layer.dir[d].wh = off;
      off += static_cast<int64_t>(gh) * spec.width;
      layer.dir[d].b = off;
      off += gh;
    }
    impl->rnn.push_back(layer);
    dim = 2 * spec.width;
  }
  impl->dense_in = dim;
  impl->dense_w = off;
  off += static_cast<int64_t>(cfg.num_labels) * dim;
  impl->dense_b = off;
  off += cfg.num_labels;

  impl->param_count = off;
  impl->running_count = roff;
}

int64_t AcousticNet::ParamCount(const NetConfig& config) {
  Impl impl;
  BuildLayout(config, &impl);
  return impl.param_count;
}

AcousticNet::AcousticNet(const NetConfig& config) : config_(config), impl_(new Impl) {
  BuildLayout(config, impl_.get());
  params_.assign(impl_->param_count, 0.0);
  running_.assign(impl_->running_count, 0.0);

  uint64_t seed = config.seed;
  int li = 0;
  for (const auto& layer : impl_->conv) {
    const auto& s = layer.spec;
    const int fan_in = s.kernel_f * s.kernel_t * layer.in_channels;
    const int fan_out = s.kernel_f * s.kernel_t * s.filters;
    XavierFill(std::span<double>(params_.data() + layer.w,
                                 static_cast<size_t>(layer.WRows()) * layer.WCols()),
               fan_in, fan_out, Fnv1a64(StrCat("conv", li, ".w"), seed));
    if (s.batchnorm) {
      for (int c = 0; c < s.filters; c++) params_[layer.gamma + c] = 1.0;
      for (int c = 0; c < s.filters; c++) running_[layer.run_var + c] = 1.0;
    }
    li++;
  }
  li = 0;
  for (const auto& layer : impl_->rnn) {
    const int h = layer.spec.width;
    const int gates = NumGates(layer.spec.cell);
    for (int d = 0; d < 2; d++) {
      for (int g = 0; g < gates; g++) {
        XavierFill(std::span<double>(params_.data() + layer.dir[d].wx +
                                         static_cast<int64_t>(g) * h * layer.input_dim,
                                     static_cast<size_t>(h) * layer.input_dim),
                   layer.input_dim, h, Fnv1a64(StrCat("rnn", li, ".d", d, ".wx", g), seed));
        XavierFill(std::span<double>(params_.data() + layer.dir[d].wh +
                                         static_cast<int64_t>(g) * h * h,
                                     static_cast<size_t>(h) * h),
                   h, h, Fnv1a64(StrCat("rnn", li, ".d", d, ".wh", g), seed));
      }
    }
    li++;
  }
  XavierFill(std::span<double>(params_.data() + impl_->dense_w,
                               static_cast<size_t>(config.num_labels) * impl_->dense_in),
             impl_->dense_in, config.num_labels, Fnv1a64("dense.w", seed));
}

AcousticNet::~AcousticNet() = default;

int AcousticNet::OutputFrames(int frames) const {
  int t = frames;
  for (const auto& layer : impl_->conv) t = (t + layer.spec.stride_t - 1) / layer.spec.stride_t;
  return t;
}

void AcousticNet::SnapToStorage() {
  for (double& v : params_) v = static_cast<double>(static_cast<float>(v));
  for (double& v : running_) v = static_cast<double>(static_cast<float>(v));
}

// ---------------------------------------------------------------------------
// Forward

struct AcousticNet::BatchContext {
  NetMode mode = NetMode::kInfer;
  uint64_t dropout_seed = 0;
  int items = 0;

  struct ConvItem {
    Tensor3 input;   // layer input
    Tensor3 z;       // conv output before BatchNorm
    Tensor3 act_in;  // BatchNorm output (clipped-ReLU input)
  };
  std::vector<std::vector<ConvItem>> conv;        // [layer][item]
  std::vector<std::vector<double>> bn_mean;       // [layer][channel] stats used
  std::vector<std::vector<double>> bn_inv_std;    // [layer][channel]

  struct RnnDirItem {
    Matrix gates;   // T x G*H, post-nonlinearity
    Matrix uc;      // T x H (GRU candidate recurrent product)
    Matrix h;       // (T+1) x H, processing order; h row q is the state before step q
    Matrix c;       // (T+1) x H (LSTM)
    Matrix tanh_c;  // T x H (LSTM)
  };
  std::vector<std::vector<std::array<RnnDirItem, 2>>> rnn;  // [layer][item]
  std::vector<std::vector<Matrix>> rnn_inputs;              // [layer][item], layer 0 = conv flatten
  std::vector<std::vector<Matrix>> dropout_mask;            // [layer][item]; empty when inactive
  std::vector<Matrix> dense_in;                             // [item]
  std::vector<Matrix> logprobs;                             // [item]
};

void AcousticNet::BatchContextDeleter::operator()(BatchContext* ctx) const { delete ctx; }

AcousticNet::BatchContextPtr AcousticNet::NewContext() {
  return BatchContextPtr(new BatchContext);
}

namespace {

// One direction of a bidirectional layer. X is T x D; out rows are written
// at the actual time indices. reverse scans time back-to-front.
void RunRnnDir(const MatView& wx, const MatView& wh, const double* bias, RnnCell cell, int width,
               const Matrix& x, bool reverse, AcousticNet::BatchContext::RnnDirItem* st,
               Matrix* out, int out_col_offset) {
  const int T = x.Rows();
  const int D = x.Cols();
  const int G = NumGates(cell);
  const int GH = G * width;

  Matrix gx(T, GH);
  Gemm(false, true, T, GH, D, 1.0, x.Data(), D, wx.data, D, 0.0, gx.Data(), GH);

  st->gates.Resize(T, GH);
  st->h.Resize(T + 1, width);
  if (cell == RnnCell::kGru) {
    st->uc.Resize(T, width);
  } else {
    st->c.Resize(T + 1, width);
    st->tanh_c.Resize(T, width);
  }

  std::vector<double> u(GH);
  for (int q = 0; q < T; q++) {
    const int t = reverse ? T - 1 - q : q;
    const double* h_prev = st->h.Row(q);
    Gemv(false, GH, width, 1.0, wh.data, width, h_prev, 0.0, u.data());
    const double* gxt = gx.Row(t);
    double* gate = st->gates.Row(q);
    double* h_new = st->h.Row(q + 1);
    if (cell == RnnCell::kGru) {
      double* ucq = st->uc.Row(q);
      for (int i = 0; i < width; i++) {
        const double z = Sigmoid(gxt[i] + u[i] + bias[i]);
        const double r = Sigmoid(gxt[width + i] + u[width + i] + bias[width + i]);
        ucq[i] = u[2 * width + i];
        const double c = std::tanh(gxt[2 * width + i] + r * ucq[i] + bias[2 * width + i]);
        gate[i] = z;
        gate[width + i] = r;
        gate[2 * width + i] = c;
        h_new[i] = z * h_prev[i] + (1.0 - z) * c;
      }
    } else {
      const double* c_prev = st->c.Row(q);
      double* c_new = st->c.Row(q + 1);
      double* tc = st->tanh_c.Row(q);
      for (int i = 0; i < width; i++) {
        const double ig = Sigmoid(gxt[i] + u[i] + bias[i]);
        const double fg = Sigmoid(gxt[width + i] + u[width + i] + bias[width + i]);
        const double og = Sigmoid(gxt[2 * width + i] + u[2 * width + i] + bias[2 * width + i]);
        const double gg = std::tanh(gxt[3 * width + i] + u[3 * width + i] + bias[3 * width + i]);
        gate[i] = ig;
        gate[width + i] = fg;
        gate[2 * width + i] = og;
        gate[3 * width + i] = gg;
        c_new[i] = fg * c_prev[i] + ig * gg;
        tc[i] = std::tanh(c_new[i]);
        h_new[i] = og * tc[i];
      }
    }
    double* dst = out->Row(t) + out_col_offset;
    for (int i = 0; i < width; i++) dst[i] = h_new[i];
  }
}

// BPTT mirror of RunRnnDir. dout holds the gradient at actual time indices
// (already column-sliced for this direction). Accumulates into the gradient
// views and into dx.
void BackRnnDir(const MatView& wx, const MatView& wh, const double* bias, RnnCell cell, int width,
                const Matrix& x, bool reverse, const AcousticNet::BatchContext::RnnDirItem& st,
                const Matrix& dout, int dout_col_offset, MatView dwx, MatView dwh, double* dbias,
                Matrix* dx) {
  (void)bias;
  const int T = x.Rows();
  const int D = x.Cols();
  const int G = NumGates(cell);
  const int GH = G * width;

  Matrix dgx(T, GH);
  std::vector<double> dh(width, 0.0), dc(width, 0.0), du(GH), dh_prev(width);

  for (int q = T - 1; q >= 0; q--) {
    const int t = reverse ? T - 1 - q : q;
    const double* g = st.gates.Row(q);
    const double* h_prev = st.h.Row(q);
    const double* do_row = dout.Row(t) + dout_col_offset;
    for (int i = 0; i < width; i++) dh[i] += do_row[i];

    double* dgxq = dgx.Row(q);
    if (cell == RnnCell::kGru) {
      const double* ucq = st.uc.Row(q);
      for (int i = 0; i < width; i++) {
        const double z = g[i], r = g[width + i], c = g[2 * width + i];
        const double dz = dh[i] * (h_prev[i] - c);
        const double dcand = dh[i] * (1.0 - z);
        const double dac = dcand * (1.0 - c * c);
        const double daz = dz * z * (1.0 - z);
        const double dr = dac * ucq[i];
        const double dar = dr * r * (1.0 - r);
        dgxq[i] = daz;
        dgxq[width + i] = dar;
        dgxq[2 * width + i] = dac;
        du[i] = daz;
        du[width + i] = dar;
        du[2 * width + i] = dac * r;
        dh_prev[i] = dh[i] * z;
      }
    } else {
      const double* c_prev = st.c.Row(q);
      const double* tc = st.tanh_c.Row(q);
      for (int i = 0; i < width; i++) {
        const double ig = g[i], fg = g[width + i], og = g[2 * width + i], gg = g[3 * width + i];
        const double dog = dh[i] * tc[i];
        dc[i] += dh[i] * og * (1.0 - tc[i] * tc[i]);
        const double dig = dc[i] * gg;
        const double dfg = dc[i] * c_prev[i];
        const double dgg = dc[i] * ig;
        const double dai = dig * ig * (1.0 - ig);
        const double daf = dfg * fg * (1.0 - fg);
        const double dao = dog * og * (1.0 - og);
        const double dag = dgg * (1.0 - gg * gg);
        dgxq[i] = dai;
        dgxq[width + i] = daf;
        dgxq[2 * width + i] = dao;
        dgxq[3 * width + i] = dag;
        du[i] = dai;
        du[width + i] = daf;
        du[2 * width + i] = dao;
        du[3 * width + i] = dag;
        dc[i] *= fg;  // becomes dc_prev
        dh_prev[i] = 0.0;
      }
    }
    for (int i = 0; i < GH; i++) dbias[i] += dgxq[i];
    Ger(GH, width, 1.0, du.data(), h_prev, dwh.data, width);
    Gemv(true, GH, width, 1.0, wh.data, width, du.data(), 0.0, dh.data());
    for (int i = 0; i < width; i++) dh[i] += dh_prev[i];
  }

  // dWx += dgx^T X ; dx += dgx Wx. dgx rows are in processing order but
  // gx rows were consumed at actual time indices; map back first.
  Matrix dgx_time(T, GH);
  for (int q = 0; q < T; q++) {
    const int t = reverse ? T - 1 - q : q;
    std::copy(dgx.Row(q), dgx.Row(q) + GH, dgx_time.Row(t));
  }
  Gemm(true, false, GH, D, T, 1.0, dgx_time.Data(), GH, x.Data(), D, 1.0, dwx.data, D);
  Gemm(false, false, T, D, GH, 1.0, dgx_time.Data(), GH, wx.data, D, 1.0, dx->Data(), D);
}

}  // namespace

void GruCellStep(const MatView& wx, const MatView& wh, const double* bias, const double* x,
                 const double* h_prev, int input_dim, int width, double* h_out) {
  std::vector<double> gx(3 * width), u(3 * width);
  Gemv(false, 3 * width, input_dim, 1.0, wx.data, input_dim, x, 0.0, gx.data());
  Gemv(false, 3 * width, width, 1.0, wh.data, width, h_prev, 0.0, u.data());
  for (int i = 0; i < width; i++) {
    const double z = Sigmoid(gx[i] + u[i] + bias[i]);
    const double r = Sigmoid(gx[width + i] + u[width + i] + bias[width + i]);
    const double c = std::tanh(gx[2 * width + i] + r * u[2 * width + i] + bias[2 * width + i]);
    h_out[i] = z * h_prev[i] + (1.0 - z) * c;
  }
}

void LstmCellStep(const MatView& wx, const MatView& wh, const double* bias, const double* x,
                  const double* h_prev, const double* c_prev, int input_dim, int width,
                  double* h_out, double* c_out) {
  std::vector<double> gx(4 * width), u(4 * width);
  Gemv(false, 4 * width, input_dim, 1.0, wx.data, input_dim, x, 0.0, gx.data());
  Gemv(false, 4 * width, width, 1.0, wh.data, width, h_prev, 0.0, u.data());
  for (int i = 0; i < width; i++) {
    const double ig = Sigmoid(gx[i] + u[i] + bias[i]);
    const double fg = Sigmoid(gx[width + i] + u[width + i] + bias[width + i]);
    const double og = Sigmoid(gx[2 * width + i] + u[2 * width + i] + bias[2 * width + i]);
    const double gg = std::tanh(gx[3 * width + i] + u[3 * width + i] + bias[3 * width + i]);
    c_out[i] = fg * c_prev[i] + ig * gg;
    h_out[i] = og * std::tanh(c_out[i]);
  }
}

std::vector<Matrix> AcousticNet::Forward(const std::vector<const Matrix*>& feats, NetMode mode,
                                         uint64_t dropout_seed, BatchContext* ctx_out,
                                         bool update_running_stats) {
  if (feats.empty()) throw DataError("net: empty batch");
  for (const Matrix* f : feats) {
    if (f == nullptr || f->Rows() < 1) throw DataError("net: empty feature matrix in batch");
    if (f->Cols() != config_.input_bins)
      throw ConfigError(StrCat("net: features have ", f->Cols(), " bins, configured for ",
                               config_.input_bins));
  }

  std::unique_ptr<BatchContext> local;
  BatchContext* ctx = ctx_out;
  if (ctx == nullptr) {
    local.reset(new BatchContext);
    ctx = local.get();
  }
  *ctx = BatchContext{};
  ctx->mode = mode;
  ctx->dropout_seed = dropout_seed;
  const int items = static_cast<int>(feats.size());
  ctx->items = items;

  const int num_conv = static_cast<int>(impl_->conv.size());
  ctx->conv.resize(num_conv);
  ctx->bn_mean.resize(num_conv);
  ctx->bn_inv_std.resize(num_conv);

  // Conv inputs for layer 0: [1, F, T] from the T x F feature matrix.
  std::vector<Tensor3> current(items);
  for (int i = 0; i < items; i++) {
    const Matrix& f = *feats[i];
    current[i].Resize(1, f.Cols(), f.Rows());
    for (int t = 0; t < f.Rows(); t++)
      for (int k = 0; k < f.Cols(); k++)
        current[i].v[static_cast<size_t>(k) * f.Rows() + t] = f(t, k);
  }

  for (int l = 0; l < num_conv; l++) {
    const auto& layer = impl_->conv[l];
    const auto& s = layer.spec;
    auto& per_item = ctx->conv[l];
    per_item.resize(items);

    // GEMM z = W cols + b, chunked over flattened output positions.
    for (int i = 0; i < items; i++) {
      per_item[i].input = std::move(current[i]);
      const Tensor3& in = per_item[i].input;
      auto [Fo, To] = ConvOutputShape({in.f, in.t}, s);
      Padding pad = SamePadding(in.f, in.t, s, Fo, To);
      Tensor3& z = per_item[i].z;
      z.Resize(s.filters, Fo, To);
      const int rows = layer.WCols();
      const int total = Fo * To;
      const int chunk = std::max(1, static_cast<int>(kColChunkDoubles / std::max(1, rows)));
      std::vector<double> cols(static_cast<size_t>(rows) * std::min(chunk, total));
      for (int p0 = 0; p0 < total; p0 += chunk) {
        const int p1 = std::min(total, p0 + chunk);
        Im2Col(in, s, To, pad, p0, p1, cols.data());
        Gemm(false, false, s.filters, p1 - p0, rows, 1.0, params_.data() + layer.w, rows,
             cols.data(), p1 - p0, 0.0, z.v.data() + p0, total);
      }
      for (int c = 0; c < s.filters; c++) {
        double* zc = z.Chan(c);
        const double bias = params_[layer.b + c];
        for (int p = 0; p < total; p++) zc[p] += bias;
      }
    }

    // BatchNorm across the batch (train) or with running stats (infer).
    if (s.batchnorm) {
      auto& mean = ctx->bn_mean[l];
      auto& inv_std = ctx->bn_inv_std[l];
      mean.assign(s.filters, 0.0);
      inv_std.assign(s.filters, 0.0);
      std::vector<double> var(s.filters, 0.0);
      if (mode == NetMode::kTrain) {
        int64_t count = 0;
        for (int i = 0; i < items; i++)
          count += static_cast<int64_t>(per_item[i].z.f) * per_item[i].z.t;
        if (count < 2) throw DataError("batchnorm: fewer than two elements per channel");
        std::vector<double> gathered;
        gathered.reserve(count);
        for (int c = 0; c < s.filters; c++) {
          gathered.clear();
          for (int i = 0; i < items; i++) {
            const Tensor3& z = per_item[i].z;
            const double* zc = z.Chan(c);
            gathered.insert(gathered.end(), zc, zc + static_cast<size_t>(z.f) * z.t);
          }
          MeanVar(gathered, &mean[c], &var[c]);
          inv_std[c] = 1.0 / std::sqrt(var[c] + kBatchNormEps);
        }
        if (update_running_stats) {
          for (int c = 0; c < s.filters; c++) {
            running_[layer.run_mean + c] = kBatchNormMomentum * running_[layer.run_mean + c] +
                                           (1.0 - kBatchNormMomentum) * mean[c];
            running_[layer.run_var + c] = kBatchNormMomentum * running_[layer.run_var + c] +
                                          (1.0 - kBatchNormMomentum) * var[c];
          }
        }
      } else {
        for (int c = 0; c < s.filters; c++) {
          mean[c] = running_[layer.run_mean + c];
          var[c] = running_[layer.run_var + c];
          inv_std[c] = 1.0 / std::sqrt(var[c] + kBatchNormEps);
        }
      }
      for (int i = 0; i < items; i++) {
        const Tensor3& z = per_item[i].z;
        Tensor3& a = per_item[i].act_in;
        a.Resize(z.c, z.f, z.t);
        for (int c = 0; c < s.filters; c++) {
          const size_t n = static_cast<size_t>(z.f) * z.t;
          BatchNormApply(std::span<const double>(z.Chan(c), n), mean[c], var[c],
                         params_[layer.gamma + c], params_[layer.beta + c],
                         std::span<double>(a.Chan(c), n));
        }
      }
    } else {
      for (int i = 0; i < items; i++) per_item[i].act_in = per_item[i].z;
    }

    // Clipped ReLU into the next layer's input.
    current.assign(items, Tensor3());
    for (int i = 0; i < items; i++) {
      const Tensor3& a = per_item[i].act_in;
      current[i].Resize(a.c, a.f, a.t);
      for (size_t p = 0; p < a.Size(); p++) current[i].v[p] = ClippedRelu(a.v[p]);
    }
  }

  // Flatten [C, F, T] to T x (C*F) sequences.
  const int num_rnn = static_cast<int>(impl_->rnn.size());
  ctx->rnn.resize(num_rnn);
  ctx->rnn_inputs.resize(num_rnn + 1);
  ctx->dropout_mask.resize(num_rnn);
  auto& first = ctx->rnn_inputs[0];
  first.resize(items);
  for (int i = 0; i < items; i++) {
    const Tensor3& y = current[i];
    first[i].Resize(y.t, y.c * y.f);
    for (int c = 0; c < y.c; c++)
      for (int f = 0; f < y.f; f++) {
        const double* src = y.Chan(c) + static_cast<size_t>(f) * y.t;
        for (int t = 0; t < y.t; t++) first[i](t, c * y.f + f) = src[t];
      }
  }
  current.clear();

  for (int l = 0; l < num_rnn; l++) {
    const auto& layer = impl_->rnn[l];
    const int h = layer.spec.width;
    const int gh = NumGates(layer.spec.cell) * h;
    ctx->rnn[l].resize(items);
    ctx->dropout_mask[l].resize(items);
    auto& outs = ctx->rnn_inputs[l + 1];
    outs.resize(items);
    for (int i = 0; i < items; i++) {
      const Matrix& x = ctx->rnn_inputs[l][i];
      Matrix& out = outs[i];
      out.Resize(x.Rows(), 2 * h);
      for (int d = 0; d < 2; d++) {
        MatView wx{params_.data() + layer.dir[d].wx, gh, layer.input_dim};
        MatView wh{params_.data() + layer.dir[d].wh, gh, h};
        RunRnnDir(wx, wh, params_.data() + layer.dir[d].b, layer.spec.cell, h, x, d == 1,
                  &ctx->rnn[l][i][d], &out, d * h);
      }
      if (mode == NetMode::kTrain && layer.spec.dropout > 0.0) {
        const double p = layer.spec.dropout;
        const double keep_scale = 1.0 / (1.0 - p);
        Rng rng = Rng::Fork(dropout_seed, StrCat("dropout.l", l, ".i", i));
        Matrix& mask = ctx->dropout_mask[l][i];
        mask.Resize(out.Rows(), out.Cols());
        for (int r = 0; r < out.Rows(); r++)
          for (int c2 = 0; c2 < out.Cols(); c2++) {
            const double f = rng.Uniform() < p ? 0.0 : keep_scale;
            mask(r, c2) = f;
            out(r, c2) *= f;
          }
      }
    }
  }

  // Dense projection and log-softmax.
  const int K = config_.num_labels;
  const int D = impl_->dense_in;
  ctx->dense_in = ctx->rnn_inputs[num_rnn];
  ctx->logprobs.resize(items);
  std::vector<Matrix> result(items);
  for (int i = 0; i < items; i++) {
    const Matrix& y = ctx->dense_in[i];
    Matrix logits(y.Rows(), K);
    Gemm(false, true, y.Rows(), K, D, 1.0, y.Data(), D, params_.data() + impl_->dense_w, D, 0.0,
         logits.Data(), K);
    for (int t = 0; t < logits.Rows(); t++) {
      double* row = logits.Row(t);
      for (int k = 0; k < K; k++) row[k] += params_[impl_->dense_b + k];
      double mx = row[0];
      for (int k = 1; k < K; k++) mx = std::max(mx, row[k]);
      double lse = 0.0;
      for (int k = 0; k < K; k++) lse += std::exp(row[k] - mx);
      lse = mx + std::log(lse);
      for (int k = 0; k < K; k++) row[k] -= lse;
    }
    ctx->logprobs[i] = logits;
    result[i] = std::move(logits);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Backward

void AcousticNet::Backward(const BatchContext& ctx, const std::vector<Matrix>& dlogprobs,
                           std::span<double> grad) {
  if (ctx.mode != NetMode::kTrain) throw Error("net: backward requires a train-mode forward");
  if (static_cast<int>(dlogprobs.size()) != ctx.items)
    throw Error("net: gradient batch size mismatch");
  if (grad.size() != params_.size()) throw Error("net: gradient buffer size mismatch");
  const int items = ctx.items;
  const int K = config_.num_labels;
  const int D = impl_->dense_in;

  // Log-softmax and dense backward.
  std::vector<Matrix> dy(items);
  MatView dense_w{params_.data() + impl_->dense_w, K, D};
  MatView ddense_w{grad.data() + impl_->dense_w, K, D};
  for (int i = 0; i < items; i++) {
    const Matrix& lp = ctx.logprobs[i];
    const Matrix& dlp = dlogprobs[i];
    if (dlp.Rows() != lp.Rows() || dlp.Cols() != lp.Cols())
      throw Error("net: dlogprobs dimensions mismatch");
    Matrix dlogits(lp.Rows(), K);
    for (int t = 0; t < lp.Rows(); t++) {
      const double* lpr = lp.Row(t);
      const double* dr = dlp.Row(t);
      double s = 0.0;
      for (int k = 0; k < K; k++) s += dr[k];
      double* out = dlogits.Row(t);
      for (int k = 0; k < K; k++) out[k] = dr[k] - std::exp(lpr[k]) * s;
    }
    const Matrix& y = ctx.dense_in[i];
    Gemm(true, false, K, D, lp.Rows(), 1.0, dlogits.Data(), K, y.Data(), D, 1.0, ddense_w.data,
         D);
    for (int t = 0; t < lp.Rows(); t++) {
      const double* out = dlogits.Row(t);
      for (int k = 0; k < K; k++) grad[impl_->dense_b + k] += out[k];
    }
    dy[i].Resize(lp.Rows(), D);
    Gemm(false, false, lp.Rows(), D, K, 1.0, dlogits.Data(), K, dense_w.data, D, 0.0,
         dy[i].Data(), D);
  }

  // RNN stack, top down.
  const int num_rnn = static_cast<int>(impl_->rnn.size());
  for (int l = num_rnn - 1; l >= 0; l--) {
    const auto& layer = impl_->rnn[l];
    const int h = layer.spec.width;
    const int gh = NumGates(layer.spec.cell) * h;
    std::vector<Matrix> dx(items);
    for (int i = 0; i < items; i++) {
      Matrix& dout = dy[i];
      const Matrix& mask = ctx.dropout_mask[l][i];
      if (mask.Rows() > 0) {
        for (int r = 0; r < dout.Rows(); r++)
          for (int c = 0; c < dout.Cols(); c++) dout(r, c) *= mask(r, c);
      }
      const Matrix& x = ctx.rnn_inputs[l][i];
      dx[i].Resize(x.Rows(), x.Cols());
      for (int d = 0; d < 2; d++) {
        MatView wx{params_.data() + layer.dir[d].wx, gh, layer.input_dim};
        MatView wh{params_.data() + layer.dir[d].wh, gh, h};
        MatView dwx{grad.data() + layer.dir[d].wx, gh, layer.input_dim};
        MatView dwh{grad.data() + layer.dir[d].wh, gh, h};
        BackRnnDir(wx, wh, params_.data() + layer.dir[d].b, layer.spec.cell, h, x, d == 1,
                   ctx.rnn[l][i][d], dout, d * h, dwx, dwh, grad.data() + layer.dir[d].b,
                   &dx[i]);
      }
    }
    dy = std::move(dx);
  }

  // Un-flatten back to conv tensors.
  const int num_conv = static_cast<int>(impl_->conv.size());
  std::vector<Tensor3> dcur(items);
  for (int i = 0; i < items; i++) {
    const Matrix& dflat = dy[i];
    int C, Fb;
    if (num_conv > 0) {
      C = impl_->conv_out_channels;
      Fb = impl_->conv_out_bins;
    } else {
      C = 1;
      Fb = config_.input_bins;
    }
    dcur[i].Resize(C, Fb, dflat.Rows());
    for (int c = 0; c < C; c++)
      for (int f = 0; f < Fb; f++) {
        double* dst = dcur[i].Chan(c) + static_cast<size_t>(f) * dflat.Rows();
        for (int t = 0; t < dflat.Rows(); t++) dst[t] = dflat(t, c * Fb + f);
      }
  }

  // Conv stack, top down.
  for (int l = num_conv - 1; l >= 0; l--) {
    const auto& layer = impl_->conv[l];
    const auto& s = layer.spec;
    const auto& per_item = ctx.conv[l];

    // Clipped-ReLU mask.
    for (int i = 0; i < items; i++) {
      const Tensor3& a = per_item[i].act_in;
      Tensor3& d = dcur[i];
      for (size_t p = 0; p < a.Size(); p++)
        if (a.v[p] <= 0.0 || a.v[p] >= 20.0) d.v[p] = 0.0;
    }

    // BatchNorm backward (shared batch statistics).
    if (s.batchnorm) {
      const auto& mean = ctx.bn_mean[l];
      const auto& inv_std = ctx.bn_inv_std[l];
      int64_t count = 0;
      for (int i = 0; i < items; i++)
        count += static_cast<int64_t>(per_item[i].z.f) * per_item[i].z.t;
      for (int c = 0; c < s.filters; c++) {
        const double g = params_[layer.gamma + c];
        const double m = mean[c], is = inv_std[c];
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < items; i++) {
          const Tensor3& z = per_item[i].z;
          const double* zc = z.Chan(c);
          const double* dc = dcur[i].Chan(c);
          for (int p = 0; p < z.f * z.t; p++) {
            s1 += dc[p];
            s2 += dc[p] * (zc[p] - m) * is;
          }
        }
        grad[layer.beta + c] += s1;
        grad[layer.gamma + c] += s2;
        const double n = static_cast<double>(count);
        for (int i = 0; i < items; i++) {
          const Tensor3& z = per_item[i].z;
          const double* zc = z.Chan(c);
          double* dc = dcur[i].Chan(c);
          for (int p = 0; p < z.f * z.t; p++) {
            const double xhat = (zc[p] - m) * is;
            dc[p] = g * is * (dc[p] - s1 / n - xhat * s2 / n);
          }
        }
      }
    }

    // Conv weight/bias gradients and input gradient.
    std::vector<Tensor3> dprev(items);
    MatView w{params_.data() + layer.w, layer.WRows(), layer.WCols()};
    MatView dw{grad.data() + layer.w, layer.WRows(), layer.WCols()};
    for (int i = 0; i < items; i++) {
      const Tensor3& in = per_item[i].input;
      const Tensor3& dz = dcur[i];
      auto [Fo, To] = ConvOutputShape({in.f, in.t}, s);
      Padding pad = SamePadding(in.f, in.t, s, Fo, To);
      const int rows = layer.WCols();
      const int total = Fo * To;

      for (int c = 0; c < s.filters; c++) {
        const double* dzc = dz.Chan(c);
        double acc = 0.0;
        for (int p = 0; p < total; p++) acc += dzc[p];
        grad[layer.b + c] += acc;
      }

      dprev[i].Resize(in.c, in.f, in.t);
      const int chunk = std::max(1, static_cast<int>(kColChunkDoubles / std::max(1, rows)));
      std::vector<double> cols(static_cast<size_t>(rows) * std::min(chunk, total));
      std::vector<double> dcols(cols.size());
      for (int p0 = 0; p0 < total; p0 += chunk) {
        const int p1 = std::min(total, p0 + chunk);
        Im2Col(in, s, To, pad, p0, p1, cols.data());
        Gemm(false, true, s.filters, rows, p1 - p0, 1.0, dz.v.data() + p0, total, cols.data(),
             p1 - p0, 1.0, dw.data, rows);
        Gemm(true, false, rows, p1 - p0, s.filters, 1.0, w.data, rows, dz.v.data() + p0, total,
             0.0, dcols.data(), p1 - p0);
        Col2Im(dcols.data(), s, To, pad, p0, p1, &dprev[i]);
      }
    }
    dcur = std::move(dprev);
  }
}

}  // namespace asr
