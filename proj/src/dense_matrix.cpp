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

#include "sketchlsr/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sketchlsr/errors.hpp"
#include "sketchlsr/simd/kernels.hpp"

namespace sketchlsr {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw DomainError("matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " given " +
                      std::to_string(entries_.size()) + " entries");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DomainError("ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(entries));
}

DenseMatrix DenseMatrix::column_vector(std::span<const double> v) {
  return DenseMatrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Vector DenseMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool DenseMatrix::all_finite() const noexcept {
  for (double v : entries_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return simd::active().dot(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const double> v) {
  return simd::active().sum_squares(v.data(), v.size());
}

double norm2(std::span<const double> v) { return std::sqrt(squared_norm(v)); }

double frobenius_norm(const DenseMatrix& m) { return norm2(m.entries()); }

Vector multiply(const DenseMatrix& m, std::span<const double> v) {
  if (v.size() != m.cols()) throw DomainError("multiply: dimension mismatch");
  const auto& k = simd::active();
  Vector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = k.dot(m.row(r).data(), v.data(), v.size());
  return out;
}

Vector multiply_transposed(const DenseMatrix& m, std::span<const double> v) {
  if (v.size() != m.rows()) throw DomainError("multiply_transposed: dimension mismatch");
  const auto& k = simd::active();
  Vector out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) k.axpy(v[r], m.row(r).data(), out.data(), out.size());
  return out;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("multiply: inner dimension mismatch");
  const auto& k = simd::active();
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* dst = out.row(i).data();
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const double s = a(i, l);
      if (s != 0.0) k.axpy(s, b.row(l).data(), dst, b.cols());
    }
  }
  return out;
}

DenseMatrix append_column(const DenseMatrix& m, std::span<const double> v) {
  if (v.size() != m.rows()) throw DomainError("append_column: length mismatch");
  DenseMatrix out(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row(r);
    auto dst = out.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
    dst[m.cols()] = v[r];
  }
  return out;
}

}  // namespace sketchlsr
