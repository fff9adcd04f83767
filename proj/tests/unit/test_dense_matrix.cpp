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

#include "oracles.hpp"
#include "sketchlsr/dense_matrix.hpp"
#include "sketchlsr/errors.hpp"

using namespace sketchlsr;

TEST_SUITE("dense_matrix") {
  TEST_CASE("construction and indexing are row-major") {
    const DenseMatrix m = DenseMatrix::from_rows({{1, 2, 3}, {4, 5, 6}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 0) == 4);
    CHECK(m.entries()[2] == 3);
    CHECK(m.column(1) == Vector{2, 5});
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), DomainError);
  }

  TEST_CASE("transpose and identity") {
    const DenseMatrix m = oracle::gaussian(5, 3, 1);
    CHECK(m.transpose() == oracle::transpose(m));
    CHECK(multiply(m, DenseMatrix::identity(3)) == m);
  }

  TEST_CASE("products agree with the naive oracle") {
    for (std::size_t cols : {1u, 3u, 4u, 7u, 16u, 33u}) {
      const DenseMatrix a = oracle::gaussian(11, cols, cols);
      const DenseMatrix b = oracle::gaussian(cols, 5, cols + 100);
      const Vector x = oracle::gaussian_vector(cols, cols + 200);
      const Vector z = oracle::gaussian_vector(11, cols + 300);
      CHECK(oracle::rel_diff(multiply(a, b), oracle::matmul(a, b)) < 1e-14);
      CHECK(oracle::rel_diff(multiply(a, x), oracle::matvec(a, x)) < 1e-14);
      CHECK(oracle::rel_diff(multiply_transposed(a, z), oracle::matvec(oracle::transpose(a), z)) < 1e-14);
      CHECK(frobenius_norm(a) == doctest::Approx(oracle::fro(a)).epsilon(1e-14));
    }
  }

  TEST_CASE("append_column") {
    const DenseMatrix m = DenseMatrix::from_rows({{1, 2}, {3, 4}});
    const DenseMatrix j = append_column(m, Vector{5, 6});
    CHECK(j == DenseMatrix::from_rows({{1, 2, 5}, {3, 4, 6}}));
    CHECK_THROWS_AS(append_column(m, Vector{1}), DomainError);
  }

  TEST_CASE("vector helpers") {
    CHECK(dot(Vector{1, 2, 3}, Vector{4, 5, 6}) == 32);
    CHECK(squared_norm(Vector{3, 4}) == 25);
    CHECK(norm2(Vector{3, 4}) == 5);
    CHECK_FALSE(DenseMatrix::from_rows({{1, std::nan("")}}).all_finite());
  }
}
