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

#include "oracles.hpp"
#include "sketchlsr/bounds.hpp"
#include "sketchlsr/errors.hpp"
#include "sketchlsr/samplers.hpp"

using namespace sketchlsr;
using namespace sketchlsr::bounds;

TEST_SUITE("bounds") {
  TEST_CASE("leverage sampling size") {
    // max{20 * 20 * ln 20, 400 * 20 / 0.5} = max{1198.3, 16000}
    CHECK(leverage_sampling_size(20, 0.5, 20.0) == 16000);
    CHECK(leverage_sampling_size(1, 0.3) == static_cast<std::size_t>(std::ceil(400.0 / 0.3)));
    CHECK(leverage_sampling_size(10, 1.0, 0.0) == 4000);
    // The d ln d term dominates once c_lnd * ln d > 400 / eps.
    CHECK(leverage_sampling_size(1000, 1.0, 100.0) ==
          static_cast<std::size_t>(std::ceil(100.0 * 1000.0 * std::log(1000.0))));
    CHECK_THROWS_AS(leverage_sampling_size(20, 0.0), DomainError);
    CHECK_THROWS_AS(leverage_sampling_size(20, 1.5), DomainError);
    CHECK_THROWS_AS(leverage_sampling_size(0, 0.5), DomainError);
  }

  TEST_CASE("uniform sampling size") {
    CHECK(uniform_sampling_size(2, 2.0) == 30773);
    CHECK(uniform_sampling_size(1, 1.0) == 7000);
    std::size_t prev = 0;
    for (std::size_t d = 1; d < 200; ++d) {
      const std::size_t v = uniform_sampling_size(d, 1.0);
      CHECK(v >= prev);
      CHECK(uniform_sampling_size(d, 1.5) >= v);
      prev = v;
    }
    CHECK_THROWS_AS(uniform_sampling_size(3, 0.5), DomainError);
  }

  TEST_CASE("general uniform sampling size") {
    const double rate1 = 0.9556 * std::log(0.9556) - 0.9556 + 1.0;
    const double rate2 = 1.045 * std::log(1.045) - 1.045 + 1.0;
    const double hand = std::max(2.0 * std::log(2.0 / 0.0015) / rate1, 2.0 * std::log(2.0 / 0.0015) / rate2);
    const std::size_t v = uniform_sampling_size_general(2, 1.0, kUniformTheta1, kUniformTheta2, kUniformDelta12,
                                                        kUniformDelta12);
    CHECK(v == static_cast<std::size_t>(std::ceil(hand)));
    // The rounded rule 1000 mu d (ln d + 7) sits a few percent above the general
    // form with the same constants (about 6% at d = 2) and never below it.
    for (std::size_t d : {1u, 2u, 10u, 100u, 10000u, 1000000u}) {
      const double general = static_cast<double>(
          uniform_sampling_size_general(d, 1.0, kUniformTheta1, kUniformTheta2, kUniformDelta12, kUniformDelta12));
      const double rounded = static_cast<double>(uniform_sampling_size(d, 1.0));
      CAPTURE(d);
      CHECK(general <= rounded);
      CHECK(general >= 0.9 * rounded);
    }
    // The larger branch wins; smaller delta needs more samples.
    const auto sym = uniform_sampling_size_general(5, 2.0, 0.9, 1.1, 0.01, 0.01);
    const auto lo = uniform_sampling_size_general(5, 2.0, 0.9, 1.1, 0.01, 0.5);
    CHECK(sym >= lo);
    CHECK(uniform_sampling_size_general(5, 2.0, 0.9, 1.1, 0.001, 0.001) > sym);
    CHECK_THROWS_AS(uniform_sampling_size_general(5, 2.0, 1.0, 1.1, 0.01, 0.01), DomainError);
    CHECK_THROWS_AS(uniform_sampling_size_general(5, 2.0, 0.9, 1.0, 0.01, 0.01), DomainError);
  }

  TEST_CASE("chernoff tail") {
    ChernoffParams p;
    p.d = 7;
    p.theta1 = 1.0;
    p.xi_min = 123.0;
    CHECK(chernoff_tail(p, ChernoffSide::lower) == 7.0);

    // d = 2, mu = 2, c = 30773: xi_min / R = c / (mu d).
    p.d = 2;
    p.theta1 = kUniformTheta1;
    p.R = 1.0;
    p.xi_min = 30773.0 / 4.0;
    const double tail = chernoff_tail(p, ChernoffSide::lower);
    CHECK(tail <= kUniformDelta12);
    CHECK(std::log(tail) == doctest::Approx(log_chernoff_tail(p, ChernoffSide::lower)).epsilon(1e-12));

    double prev = INFINITY;
    for (double xi = 1; xi < 1e4; xi *= 2) {
      p.xi_min = xi;
      const double t = chernoff_tail(p, ChernoffSide::lower);
      CHECK(t < prev);
      prev = t;
    }

    ChernoffParams up;
    up.d = 3;
    up.theta2 = 2.0;
    up.xi_max = 5.0;
    up.R = 2.0;
    // d * [e^(theta-1) / theta^theta]^(xi/R)
    const double hand = 3.0 * std::pow(std::exp(1.0) / 4.0, 2.5);
    CHECK(chernoff_tail(up, ChernoffSide::upper) == doctest::Approx(hand).epsilon(1e-13));
    up.theta2 = 1.0;
    CHECK_THROWS_AS(chernoff_tail(up, ChernoffSide::upper), DomainError);
  }

  TEST_CASE("chernoff tail at the uniform-sampling constants stays below delta for d up to 1e6") {
    for (double d = 1; d <= 1e6; d *= 1.5) {
      ChernoffParams p;
      p.d = static_cast<std::size_t>(d);
      p.theta1 = kUniformTheta1;
      p.R = 1.0;
      p.xi_min = 1000.0 * (std::log(static_cast<double>(p.d)) + 7.0);
      CAPTURE(p.d);
      CHECK(chernoff_tail(p, ChernoffSide::lower) <= kUniformDelta12);
    }
  }

  TEST_CASE("matmul bound formulas") {
    CHECK(matmul_expected_bound(1.0, 1.0, 0.0, 100, MatmulVariant::frobenius) == doctest::Approx(0.1));
    CHECK(matmul_expected_bound(2.0, 3.0, 0.0, 400, MatmulVariant::frobenius) ==
          doctest::Approx(0.5 * matmul_expected_bound(2.0, 3.0, 0.0, 100, MatmulVariant::frobenius)));
    CHECK(matmul_expected_bound(2.0, 0.0, 1.0, 64, MatmulVariant::spectral, 3.0) ==
          doctest::Approx(3.0 * std::sqrt(std::log(64.0) / 64.0) * 2.0));
    CHECK_THROWS_AS(matmul_expected_bound(1.0, 1.0, 1.0, 1, MatmulVariant::spectral), DomainError);
    CHECK_THROWS_AS(matmul_expected_bound(1.0, 1.0, 1.0, 0, MatmulVariant::frobenius), DomainError);
  }

  TEST_CASE("matmul bound holds in Monte Carlo for an orthonormal U, d = 5, c = 64") {
    // With X = Y = U the Frobenius bound is ||U||_F^2 / sqrt(c) = d / sqrt(c).
    const DenseMatrix x = oracle::gaussian(1024, 5, 21);
    const ThinSvd svd = thin_svd(x);
    const Vector p = leverage_probabilities(leverage_scores(svd), 64);
    const int draws = 2000;
    double total = 0;
    for (int t = 0; t < draws; ++t) {
      SeededRng rng(21, static_cast<std::uint64_t>(t));
      const DenseMatrix su = apply_sketch(draw_leverage_sketch(p, rng), svd.U);
      const DenseMatrix g = oracle::matmul(oracle::transpose(su), su);
      total += oracle::fro(oracle::minus(DenseMatrix::identity(5), g));
    }
    const double bound = matmul_expected_bound(std::sqrt(5.0), std::sqrt(5.0), 1.0, 64, MatmulVariant::frobenius);
    CHECK(total / draws <= bound * 1.25);
  }

  TEST_CASE("beta error bound") {
    CHECK(beta_error_bound(0.5, 10.0, 1.0, 3.0) == 0.0);
    CHECK(beta_error_bound(1.2, 4.0, 0.5, 2.0) == doctest::Approx(1.2 * 16.0 * 3.0 * 4.0));
    CHECK(beta_error_bound(0.5, 6.0, 0.8, 1.0) == doctest::Approx(4.0 * beta_error_bound(0.5, 3.0, 0.8, 1.0)));
    CHECK(std::isinf(beta_error_bound(0.5, 2.0, 0.0, 1.0)));
    CHECK_THROWS_AS(beta_error_bound(0.5, 0.5, 0.9, 1.0), DomainError);
  }

  TEST_CASE("boost success") {
    CHECK(boost_success(1) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(boost_success(0) == 0.0);
    CHECK(boost_success(59) == doctest::Approx(1.0 - std::exp(59.0 * std::log(0.95))).epsilon(1e-13));
    CHECK(boost_success(59) > 0.95);
    for (std::size_t t = 1; t < 100; ++t) CHECK(std::abs(boost_success(t) - (1.0 - std::pow(0.95, t))) <= 1e-12);
  }
}
