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

#include <doctest.h>

#include <cmath>
#include <set>

#include "sketchlsr/rng.hpp"

using namespace sketchlsr;

TEST_SUITE("rng") {
  TEST_CASE("golden values pin the stream layout") {
    SeededRng r(42, 0);
    CHECK(r.next_u64() == 10890391679721887635ULL);
    SeededRng u(42, 0);
    CHECK(u.uniform01() == 0.59036931591862651);
    CHECK(u.uniform01() == 0.19062564766216628);
  }

  TEST_CASE("same key replays, different keys diverge") {
    SeededRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    bool differs_stream = false, differs_seed = false;
    for (int i = 0; i < 64; ++i) {
      const auto x = a.next_u64();
      CHECK(x == b.next_u64());
      differs_stream = differs_stream || x != c.next_u64();
      differs_seed = differs_seed || x != d.next_u64();
    }
    CHECK(differs_stream);
    CHECK(differs_seed);
  }

  TEST_CASE("derive_stream separates grid points and trials") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t ci = 0; ci < 20; ++ci) {
      for (std::uint64_t t = 0; t < 200; ++t) seen.insert(derive_stream(11, ci, t));
    }
    CHECK(seen.size() == 20u * 200u);
    CHECK(derive_stream(11, 0, 0) != derive_stream(12, 0, 0));
  }

  TEST_CASE("uniform01 lies in [0, 1) with mean 1/2") {
    SeededRng r(1, 1);
    const int n = 100000;
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform01();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    // Standard error of the mean is sqrt(1/12 / n).
    CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  }

  TEST_CASE("uniform_index is in range and unbiased for a non power of two") {
    SeededRng r(2, 2);
    const int n = 60000;
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      const auto k = r.uniform_index(3);
      REQUIRE(k < 3);
      ++counts[k];
    }
    const double se = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
    for (int c : counts) CHECK(std::abs(c - n / 3.0) < 4.0 * se);
    CHECK(r.uniform_index(1) == 0);
  }

  TEST_CASE("normal has mean 0 and variance 1") {
    SeededRng r(3, 3);
    const int n = 100000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double z = r.normal();
      s1 += z;
      s2 += z * z;
    }
    CHECK(std::abs(s1 / n) < 4.0 / std::sqrt(n));
    // Var(z^2) = 2 for a standard normal.
    CHECK(std::abs(s2 / n - 1.0) < 4.0 * std::sqrt(2.0 / n));
  }

  TEST_CASE("sign is +-1 and balanced") {
    SeededRng r(4, 4);
    int sum = 0;
    for (int i = 0; i < 40000; ++i) {
      const double s = r.sign();
      REQUIRE((s == 1.0 || s == -1.0));
      sum += static_cast<int>(s);
    }
    CHECK(std::abs(sum) < 4 * 200);
  }
}
