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

#include <arm_neon.h>

#include "sketchlsr/simd/kernel_table.hpp"
#include "simd/fwht_impl.hpp"

namespace sketchlsr::simd::neon {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t u = vld1q_f64(x + i);
    const float64x2_t v = vld1q_f64(x + i + 2);
    acc0 = vfmaq_f64(acc0, u, u);
    acc1 = vfmaq_f64(acc1, v, v);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scaled_copy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t a = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vmulq_f64(a, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] = alpha * x[i];
}

inline void butterfly_inline(double* a, double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t u = vld1q_f64(a + i);
    const float64x2_t v = vld1q_f64(b + i);
    vst1q_f64(a + i, vaddq_f64(u, v));
    vst1q_f64(b + i, vsubq_f64(u, v));
  }
  for (; i < n; ++i) {
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

const KernelTable table{Level::neon, "neon", dot, sum_squares, axpy,
                        scaled_copy, butterfly, fwht_rows};

}  // namespace sketchlsr::simd::neon
