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

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sketchlsr/errors.hpp"
#include "sketchlsr/solver.hpp"

using namespace sketchlsr;

namespace {

PreparedProblem random_prepared(std::size_t n, std::size_t d, std::uint64_t seed) {
  return prepare(RegressionProblem(oracle::gaussian(n, d, seed), oracle::gaussian_vector(n, seed + 1)));
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("prepare rejects rank-deficient X") {
    DenseMatrix x = oracle::gaussian(8, 2, 1);
    for (std::size_t i = 0; i < 8; ++i) x(i, 1) = 2.0 * x(i, 0);
    CHECK_THROWS_AS(prepare(RegressionProblem(x, oracle::gaussian_vector(8, 2))), RankError);
  }

  TEST_CASE("identity-equivalent leverage sketch reproduces the exact solution") {
    const PreparedProblem pp = random_prepared(40, 4, 3);
    SeededRng rng(1, 0);
    const SketchOperator op = draw_leverage_sketch(Vector(40, 1.0), rng);
    const SketchedSolution sol = solve_sketched(pp.problem, op);
    CHECK(oracle::rel_diff(sol.beta_tilde, pp.exact.beta) <= 1e-10);
    CHECK(error_ratio(pp, sol) == doctest::Approx(1.0).epsilon(1e-10));
    const CertificateReport rep = certify(pp, op, sol);
    CHECK(rep.sigma_min_SU == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.sigma_max_SU == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.z_norm <= 1e-10 * std::sqrt(pp.y_norm_sq));
    CHECK(rep.equality_gap <= 1e-10 * pp.y_norm_sq);
    CHECK(check(rep).ok());
  }

  TEST_CASE("full uniform sample reproduces the exact solution") {
    const PreparedProblem pp = random_prepared(30, 5, 4);
    SeededRng rng(2, 0);
    const SketchedSolution sol = solve_sketched(pp.problem, draw_uniform_sketch(30, 30, rng));
    CHECK(oracle::rel_diff(sol.beta_tilde, pp.exact.beta) <= 1e-10);
    CHECK(sol.c_realized == 30);
  }

  TEST_CASE("consistent systems are recovered exactly by any full-rank sketch") {
    const DenseMatrix x = oracle::gaussian(64, 4, 5);
    const Vector beta_star{1.5, -2.0, 0.25, 3.0};
    const PreparedProblem pp = prepare(RegressionProblem(x, oracle::matvec(x, beta_star)));
    for (std::uint64_t s = 0; s < 5; ++s) {
      SeededRng a(s, 0), b(s, 1), c(s, 2);
      for (const SketchOperator& op : {draw_uniform_sketch(64, 12, a), draw_srht(64, 12, b), draw_sparse_embedding(64, 12, c)}) {
        const SketchedSolution sol = solve_sketched(pp.problem, op);
        REQUIRE_FALSE(sol.rank_deficient);
        CHECK(oracle::rel_diff(sol.beta_tilde, beta_star) <= 1e-8);
        CHECK(error_ratio(pp, sol) == 1.0);
      }
    }
  }

  TEST_CASE("error_ratio conventions") {
    CHECK(error_ratio(0.0, 0.0, 1.0) == 1.0);
    CHECK(std::isinf(error_ratio(0.0, 0.5, 1.0)));
    CHECK(error_ratio(2.0, 3.0, 10.0) == doctest::Approx(1.5));
  }

  TEST_CASE("ratio equals 1 + ||U z||^2 / ||r||^2 and the certificate chain holds") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const PreparedProblem pp = random_prepared(128, 6, 100 + seed);
      const SketchKind kind = static_cast<SketchKind>(seed % 4);
      SeededRng rng(seed, 7);
      const SamplerConfig cfg{kind, 32, LeverageWeighting::inverse_sqrt};
      const SketchOperator op = draw_sketch(cfg, pp, rng);
      const SketchedSolution sol = solve_sketched(pp.problem, op);
      const CertificateReport rep = certify(pp, op, sol);
      CAPTURE(seed);
      CHECK(error_ratio(pp, sol) ==
            doctest::Approx(1.0 + rep.uz_norm_sq / pp.exact.residual_sq).epsilon(1e-8));
      CHECK(rep.equality_gap <= 1e-8 * pp.y_norm_sq);
      CHECK(rep.z_norm <= rep.z_bound + 1e-8 * std::sqrt(pp.y_norm_sq));
      CHECK(check(rep).ok());
    }
  }

  TEST_CASE("rank-deficient sketches fall back to the minimum-norm solution") {
    const PreparedProblem pp = random_prepared(50, 6, 9);
    SeededRng rng(3, 3);
    const SketchOperator op = draw_uniform_sketch(50, 3, rng);
    const SketchedSolution sol = solve_sketched(pp.problem, op);
    CHECK(sol.rank_deficient);
    CHECK(sol.c_realized == 3);
    CHECK(std::all_of(sol.beta_tilde.begin(), sol.beta_tilde.end(), [](double v) { return std::isfinite(v); }));
    // The sketched rows are interpolated exactly by the minimum-norm solution.
    CHECK(sol.residual_sq_sketched <= 1e-20 * pp.y_norm_sq);
    const CertificateReport rep = certify(pp, op, sol);
    CHECK(std::isinf(rep.z_bound));
    CHECK(check(rep).ok());
  }

  TEST_CASE("solve_sketched rejects a mismatched operator") {
    const PreparedProblem pp = random_prepared(20, 2, 10);
    SeededRng rng(1, 1);
    CHECK_THROWS_AS(solve_sketched(pp.problem, draw_uniform_sketch(19, 5, rng)), DomainError);
  }

  TEST_CASE("literal leverage weights are accepted and certified") {
    const PreparedProblem pp = random_prepared(200, 4, 11);
    SeededRng rng(4, 4);
    const SamplerConfig cfg{SketchKind::leverage, 60, LeverageWeighting::literal_inverse};
    const SketchOperator op = draw_sketch(cfg, pp, rng);
    const SketchedSolution sol = solve_sketched(pp.problem, op);
    CHECK(check(certify(pp, op, sol)).ok());
  }

  TEST_CASE("best_of_t") {
    const PreparedProblem pp = random_prepared(256, 5, 12);
    const SamplerConfig cfg{SketchKind::uniform, 20, LeverageWeighting::inverse_sqrt};
    const SeededRng key(77, 1000);

    const BestOfT one = best_of_t(pp, cfg, 1, key);
    SeededRng replay(77, 1000);
    const SketchedSolution single = solve_sketched(pp.problem, draw_sketch(cfg, pp, replay));
    CHECK(one.best.beta_tilde == single.beta_tilde);
    CHECK(one.best_index == 0);

    const BestOfT eight = best_of_t(pp, cfg, 8, key);
    REQUIRE(eight.ratios.size() == 8);
    CHECK(eight.ratios[0] == one.ratios[0]);
    for (double r : eight.ratios) CHECK(eight.best_ratio <= r);
    CHECK(eight.best_ratio == eight.ratios[eight.best_index]);
    CHECK_THROWS_AS(best_of_t(pp, cfg, 0, key), DomainError);
  }
}
