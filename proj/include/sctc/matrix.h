// include/sctc/matrix.h

// Copyright 2026  The sctc-mdd Authors
//
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

#ifndef SCTC_MATRIX_H_
#define SCTC_MATRIX_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace sctc {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// Dense row-major matrix of doubles. Rows are frames, columns are output
/// nodes, for every matrix that crosses a module boundary.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> Row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> Row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> Data() { return data_; }
  std::span<const double> Data() const { return data_; }

  bool operator==(const Matrix &other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// log(exp(a) + exp(b)), exact when either side is kLogZero.
double LogAdd(double a, double b);

double LogSumExp(std::span<const double> values);

// Row-wise log-softmax. Throws kNonFiniteLogit on NaN/inf input.
Matrix LogSoftmaxRows(const Matrix &logits);

// Throws kNonFiniteLogit naming the first offending entry.
void CheckFinite(const Matrix &logits);

}  // namespace sctc

#endif  // SCTC_MATRIX_H_
