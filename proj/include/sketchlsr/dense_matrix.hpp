// Copyright 2026 the sketchlsr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sketchlsr {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  /// Throws DomainError when entries.size() != rows * cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  /// n x 1 matrix holding v.
  static DenseMatrix column_vector(std::span<const double> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {entries_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {entries_.data() + r * cols_, cols_};
  }

  std::span<double> entries() noexcept { return entries_; }
  std::span<const double> entries() const noexcept { return entries_; }
  double* data() noexcept { return entries_.data(); }
  const double* data() const noexcept { return entries_.data(); }

  Vector column(std::size_t c) const;
  DenseMatrix transpose() const;
  bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Small helpers on spans; the heavy lifting goes through the simd kernels.
double dot(std::span<const double> a, std::span<const double> b);
double squared_norm(std::span<const double> v);
double norm2(std::span<const double> v);
double frobenius_norm(const DenseMatrix& m);

/// m * v
Vector multiply(const DenseMatrix& m, std::span<const double> v);
/// m^T * v
Vector multiply_transposed(const DenseMatrix& m, std::span<const double> v);
/// a * b (dense, for small operands and oracles)
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// [m | v] as an n x (k+1) matrix.
DenseMatrix append_column(const DenseMatrix& m, std::span<const double> v);

}  // namespace sketchlsr
