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

#include <cstdlib>
#include <string>

#include "sketchlsr/simd/kernels.hpp"

namespace sketchlsr::simd {
namespace {

bool cpu_supports(Level level) {
  switch (level) {
    case Level::generic:
      return true;
    case Level::avx2:
#if defined(ENABLE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Level::neon:
#if defined(ENABLE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable* compiled_table(Level level) {
  switch (level) {
    case Level::generic:
      return &generic::table;
    case Level::avx2:
#if defined(ENABLE_AVX2)
      return &avx2::table;
#else
      return nullptr;
#endif
    case Level::neon:
#if defined(ENABLE_NEON)
      return &neon::table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& select_table() {
  if (const char* forced = std::getenv("SKETCHLSR_SIMD")) {
    const std::string name(forced);
    for (Level level : {Level::generic, Level::avx2, Level::neon}) {
      if (name == level_name(level)) {
        if (const KernelTable* t = table_for(level)) return *t;
      }
    }
    return generic::table;
  }
  for (Level level : {Level::avx2, Level::neon}) {
    if (const KernelTable* t = table_for(level)) return *t;
  }
  return generic::table;
}

}  // namespace

const KernelTable* table_for(Level level) {
  return cpu_supports(level) ? compiled_table(level) : nullptr;
}

const KernelTable& active() {
  static const KernelTable& selected = select_table();
  return selected;
}

std::vector<Level> available_levels() {
  std::vector<Level> out;
  for (Level level : {Level::generic, Level::avx2, Level::neon}) {
    if (table_for(level) != nullptr) out.push_back(level);
  }
  return out;
}

std::string_view level_name(Level level) {
  switch (level) {
    case Level::generic:
      return "generic";
    case Level::avx2:
      return "avx2";
    case Level::neon:
      return "neon";
  }
  return "unknown";
}

}  // namespace sketchlsr::simd
