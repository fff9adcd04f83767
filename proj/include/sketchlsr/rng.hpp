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
#include <cstdint>
#include <random>

namespace sketchlsr {

/// splitmix64 finalizer; used to derive independent stream keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream id for trial `trial` at grid point `grid_index` of a run seeded
/// with `master_seed`.
std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t grid_index,
                            std::uint64_t trial) noexcept;

/// Deterministic random source keyed by (seed, stream).
///
/// All variates are produced from raw 64-bit engine output with explicit
/// formulas, so identical keys reproduce identical draws on every platform
/// (std::*_distribution would not guarantee that).
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound);
  /// +1.0 or -1.0 with equal probability.
  double sign();
  /// Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace sketchlsr
