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

#include "sketchlsr/simd/kernel_table.hpp"

#include "simd/fwht_impl.hpp"

namespace sketchlsr::simd::generic {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scaled_copy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

inline void butterfly_inline(double* a, double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double u = a[i];
    const double v = b[i];
    a[i] = u + v;
    b[i] = u - v;
  }
}

void butterfly(double* a, double* b, std::size_t n) { butterfly_inline(a, b, n); }

void fwht_rows(double* data, std::size_t rows, std::size_t width) {
  detail::fwht_rows_blocked(data, rows, width, butterfly_inline);
}

}  // namespace

const KernelTable table{Level::generic, "generic", dot, sum_squares, axpy,
                        scaled_copy,    butterfly, fwht_rows};

}  // namespace sketchlsr::simd::generic
