// asr/matrix.h

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

#ifndef ASR_MATRIX_H_
#define ASR_MATRIX_H_

#include <cassert>
#include <cstdint>
#include <vector>

namespace asr {

// Dense row-major double matrix. All heavy products go through BLAS.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

  int Rows() const { return rows_; }
  int Cols() const { return cols_; }
  size_t Size() const { return data_.size(); }

  double* Data() { return data_.data(); }
  const double* Data() const { return data_.data(); }
  double* Row(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }
  const double* Row(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }

  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  void Resize(int rows, int cols) {
    rows_ = rows;
    cols_ = cols;
    data_.assign(static_cast<size_t>(rows) * cols, 0.0);
  }
  void SetZero() { data_.assign(data_.size(), 0.0); }

  bool SameDim(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

 private:
  int rows_, cols_;
  std::vector<double> data_;
};

// Non-owning view of a row-major block inside a flat parameter buffer.
struct MatView {
  double* data = nullptr;
  int rows = 0, cols = 0;
  double& operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
  double* Row(int r) const { return data + static_cast<size_t>(r) * cols; }
  size_t Size() const { return static_cast<size_t>(rows) * cols; }
};

// c = alpha * op(a) (m x k) * op(b) (k x n) + beta * c, raw row-major buffers.
void Gemm(bool trans_a, bool trans_b, int m, int n, int k, double alpha, const double* a, int lda,
          const double* b, int ldb, double beta, double* c, int ldc);

// y = alpha * op(a) x + beta * y.
void Gemv(bool trans_a, int m, int n, double alpha, const double* a, int lda, const double* x,
          double beta, double* y);

// a += alpha * x y^T (rank-1 update of an m x n row-major matrix).
void Ger(int m, int n, double alpha, const double* x, const double* y, double* a, int lda);

// Fixes the BLAS worker-thread count (determinism knob; 0 leaves the default).
void SetBlasThreads(int n);

}  // namespace asr

#endif  // ASR_MATRIX_H_
