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

#include <immintrin.h>

#include "sketchlsr/simd/kernel_table.hpp"
#include "simd/fwht_impl.hpp"

#if !defined(__AVX2__) || !defined(__FMA__)
#error "kernels_avx2.cpp must be compiled with -mavx2 -mfma"
#endif

namespace sketchlsr::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d u = _mm256_loadu_pd(x + i);
    const __m256d v = _mm256_loadu_pd(x + i + 4);
    acc0 = _mm256_fmadd_pd(u, u, acc0);
    acc1 = _mm256_fmadd_pd(v, v, acc1);
  }
  if (i + 4 <= n) {
    const __m256d u = _mm256_loadu_pd(x + i);
    acc0 = _mm256_fmadd_pd(u, u, acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scaled_copy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = alpha * x[i];
}

inline void butterfly_inline(double* a, double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d u0 = _mm256_loadu_pd(a + i);
    const __m256d v0 = _mm256_loadu_pd(b + i);
    const __m256d u1 = _mm256_loadu_pd(a + i + 4);
    const __m256d v1 = _mm256_loadu_pd(b + i + 4);
    _mm256_storeu_pd(a + i, _mm256_add_pd(u0, v0));
    _mm256_storeu_pd(b + i, _mm256_sub_pd(u0, v0));
    _mm256_storeu_pd(a + i + 4, _mm256_add_pd(u1, v1));
    _mm256_storeu_pd(b + i + 4, _mm256_sub_pd(u1, v1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_loadu_pd(a + i);
    const __m256d v = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(a + i, _mm256_add_pd(u, v));
    _mm256_storeu_pd(b + i, _mm256_sub_pd(u, v));
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

const KernelTable table{Level::avx2, "avx2", dot, sum_squares, axpy,
                        scaled_copy, butterfly, fwht_rows};

}  // namespace sketchlsr::simd::avx2
