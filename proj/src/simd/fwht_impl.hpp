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

// Shared cache-blocked driver for the in-place row FWHT. Included by each
// kernel translation unit so the butterfly gets inlined with that unit's
// instruction set. Must stay free of std templates: the AVX2 unit is built
// with -mavx2 and any shared inline symbol could leak into generic code.

namespace sketchlsr::simd::detail {

// Levels below kBlockDoubles stay inside one L2-sized block.
inline constexpr std::size_t kBlockDoubles = std::size_t{1} << 15;

template <class Butterfly>
inline void fwht_rows_blocked(double* data, std::size_t rows, std::size_t width,
                              Butterfly butterfly) {
  if (rows < 2 || width == 0) return;
  std::size_t block = rows;
  while (block > 2 && block * width > kBlockDoubles) block >>= 1;

  for (std::size_t base = 0; base < rows; base += block) {
    for (std::size_t h = 1; h < block; h <<= 1) {
      for (std::size_t i = base; i < base + block; i += 2 * h) {
        butterfly(data + i * width, data + (i + h) * width, h * width);
      }
    }
  }
  for (std::size_t h = block; h < rows; h <<= 1) {
    for (std::size_t i = 0; i < rows; i += 2 * h) {
      butterfly(data + i * width, data + (i + h) * width, h * width);
    }
  }
}

}  // namespace sketchlsr::simd::detail
