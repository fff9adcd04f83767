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
#include <string>

#include "oracles.hpp"
#include "sketchlsr/simd/kernels.hpp"

using namespace sketchlsr;

namespace {

// Every compiled-in table the CPU supports, generic first.
std::vector<const simd::KernelTable*> tables() {
  std::vector<const simd::KernelTable*> out;
  for (simd::Level level : simd::available_levels()) out.push_back(simd::table_for(level));
  return out;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("generic is always available and active is one of the available tables") {
    REQUIRE(simd::table_for(simd::Level::generic) != nullptr);
    const auto levels = simd::available_levels();
    REQUIRE(!levels.empty());
    CHECK(levels.front() == simd::Level::generic);
    bool found = false;
    for (auto* t : tables()) found = found || t == &simd::active();
    CHECK(found);
    CHECK(simd::level_name(simd::Level::generic) == "generic");
    MESSAGE("active kernels: " << std::string(simd::active().name));
  }

  TEST_CASE("reductions match a long double oracle on unaligned, odd lengths") {
    for (auto* t : tables()) {
      CAPTURE(t->name);
      for (std::size_t n = 0; n < 70; ++n) {
        // Offset by one element so vector loads are never 32-byte aligned.
        const Vector a = oracle::gaussian_vector(n + 1, n);
        const Vector b = oracle::gaussian_vector(n + 1, n + 1000);
        long double ref_dot = 0, ref_sq = 0, scale = 0;
        for (std::size_t i = 1; i <= n; ++i) {
          ref_dot += static_cast<long double>(a[i]) * b[i];
          ref_sq += static_cast<long double>(a[i]) * a[i];
          scale += std::abs(static_cast<long double>(a[i]) * b[i]);
        }
        CHECK(std::abs(t->dot(a.data() + 1, b.data() + 1, n) - static_cast<double>(ref_dot)) <=
              1e-14 * static_cast<double>(scale) + 1e-300);
        CHECK(std::abs(t->sum_squares(a.data() + 1, n) - static_cast<double>(ref_sq)) <=
              1e-14 * static_cast<double>(ref_sq) + 1e-300);
      }
    }
  }

  TEST_CASE("axpy, scaled_copy and butterfly agree with the scalar reference") {
    const auto* ref = simd::table_for(simd::Level::generic);
    for (auto* t : tables()) {
      CAPTURE(t->name);
      for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 65u}) {
        const Vector x = oracle::gaussian_vector(n + 1, 7 * n + 1);
        Vector y1 = oracle::gaussian_vector(n + 1, 7 * n + 2);
        Vector y2 = y1;
        ref->axpy(-0.37, x.data() + 1, y1.data() + 1, n);
        t->axpy(-0.37, x.data() + 1, y2.data() + 1, n);
        CHECK(y2[0] == y1[0]);
        for (std::size_t i = 1; i <= n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-15));

        Vector c1(n + 1, 9.0), c2(n + 1, 9.0);
        ref->scaled_copy(2.5, x.data() + 1, c1.data() + 1, n);
        t->scaled_copy(2.5, x.data() + 1, c2.data() + 1, n);
        CHECK(c1 == c2);

        Vector a1 = x, b1 = y1, a2 = x, b2 = y1;
        ref->butterfly(a1.data() + 1, b1.data() + 1, n);
        t->butterfly(a2.data() + 1, b2.data() + 1, n);
        CHECK(a1 == a2);
        CHECK(b1 == b2);
      }
    }
  }

  TEST_CASE("scaled_copy works in place") {
    for (auto* t : tables()) {
      Vector v{1, 2, 3, 4, 5, 6, 7, 8, 9};
      t->scaled_copy(-2.0, v.data(), v.data(), v.size());
      CHECK(v == Vector{-2, -4, -6, -8, -10, -12, -14, -16, -18});
    }
  }

  TEST_CASE("fwht_rows equals multiplication by the Sylvester Hadamard matrix") {
    for (auto* t : tables()) {
      CAPTURE(t->name);
      for (std::size_t rows : {1u, 2u, 4u, 8u, 64u, 256u, 1024u}) {
        const DenseMatrix h = oracle::sylvester_hadamard(rows);
        for (std::size_t width : {1u, 2u, 3u, 8u, 9u, 17u}) {
          const DenseMatrix m = oracle::gaussian(rows, width, rows * 31 + width);
          DenseMatrix got = m;
          t->fwht_rows(got.data(), rows, width);
          CHECK(oracle::rel_diff(got, oracle::matmul(h, m)) < 1e-13);
        }
      }
    }
  }

  TEST_CASE("fwht_rows is bitwise identical across tables on large blocks") {
    // Block large enough to exercise the cache-blocked driver's cross-block levels.
    const std::size_t rows = 1u << 14;
    const DenseMatrix m = oracle::gaussian(rows, 5, 99);
    DenseMatrix ref = m;
    simd::table_for(simd::Level::generic)->fwht_rows(ref.data(), rows, 5);
    for (auto* t : tables()) {
      DenseMatrix got = m;
      t->fwht_rows(got.data(), rows, 5);
      CHECK(got == ref);
    }
  }
}
