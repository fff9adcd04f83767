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

#include <string_view>
#include <vector>

#include "sketchlsr/simd/kernel_table.hpp"

// Data-parallel inner loops. Every kernel has a portable reference version
// (generic) and optional AVX2/NEON versions; the best one supported by the
// running CPU is picked once at startup. SKETCHLSR_SIMD=generic|avx2|neon
// forces a particular table (falls back to generic when unavailable).

namespace sketchlsr::simd {

const KernelTable& active();
/// nullptr when the level was not compiled in or the CPU lacks it.
const KernelTable* table_for(Level level);
std::vector<Level> available_levels();
std::string_view level_name(Level level);

}  // namespace sketchlsr::simd
