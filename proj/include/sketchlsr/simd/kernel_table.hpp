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

// Kept free of standard-library templates: it is included by translation
// units compiled with wider instruction sets than the rest of the library.

namespace sketchlsr::simd {

enum class Level { generic, avx2, neon };

struct KernelTable {
  Level level;
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y = alpha * x
  void (*scaled_copy)(double alpha, const double* x, double* y, std::size_t n);
  /// (a, b) <- (a + b, a - b), elementwise
  void (*butterfly)(double* a, double* b, std::size_t n);
  /// Unnormalized Walsh-Hadamard transform along the row index of a
  /// row-major rows x width block; rows must be a power of two.
  void (*fwht_rows)(double* data, std::size_t rows, std::size_t width);
};

namespace generic {
extern const KernelTable table;
}
#if defined(ENABLE_AVX2)
namespace avx2 {
extern const KernelTable table;
}
#endif
#if defined(ENABLE_NEON)
namespace neon {
extern const KernelTable table;
}
#endif

}  // namespace sketchlsr::simd
