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

#include <chrono>
#include <cstddef>
#include <vector>

#include "sketchlsr/linalg.hpp"
#include "sketchlsr/rng.hpp"
#include "sketchlsr/samplers.hpp"

namespace sketchlsr {

/// A problem with everything the sketch-and-solve pipeline and its
/// certificate need computed once: SVD, leverage profile, exact solution.
struct PreparedProblem {
  RegressionProblem problem;
  ThinSvd svd;
  LeverageProfile leverage;
  ExactSolution exact;
  double gamma = 1.0;
  double kappa = 1.0;
  double y_norm_sq = 0.0;
};

/// Throws RankError when X is not of full column rank.
PreparedProblem prepare(RegressionProblem problem);

struct SketchedSolution {
  Vector beta_tilde;
  std::size_t c_realized = 0;
  SketchKind sketch_kind = SketchKind::uniform;
  double residual_sq_full = 0.0;      // ||y - X beta_tilde||^2
  double residual_sq_sketched = 0.0;  // ||S y - S X beta_tilde||^2
  bool rank_deficient = false;        // SX lost rank; beta_tilde is min-norm
  std::chrono::nanoseconds apply_time{0};
  std::chrono::nanoseconds solve_time{0};
};

/// Quantities of the deterministic excess-residual chain for one realized
/// sketch S. With r = y - X beta_lsr and U z = X (beta_lsr - beta_tilde):
///
///   ||y - X beta_tilde||^2 = ||r||^2 + ||U z||^2                 (equality)
///   ||beta_lsr - beta_tilde||^2 <= ||U z||^2 / sigma_min(X)^2
///   ||z|| <= ||(SU)^T S r|| / sigma_min(SU)^2
///   ||r||^2 <= sigma_max(X)^2 (gamma^-2 - 1) ||beta_lsr||^2
struct CertificateReport {
  double sigma_min_SU = 0.0;
  double sigma_max_SU = 0.0;
  double cross_term = 0.0;  // ||(SU)^T S r||
  double z_norm = 0.0;
  double uz_norm_sq = 0.0;
  double equality_gap = 0.0;
  double z_bound = 0.0;  // +inf when sigma_min(SU) vanishes
  double beta_gap_sq = 0.0;
  double beta_gap_bound = 0.0;  // ||U z||^2 / sigma_min(X)^2
  double residual_perp_sq = 0.0;
  double residual_perp_bound = 0.0;  // sigma_max(X)^2 (gamma^-2 - 1) ||beta_lsr||^2
  double sigma_min_X = 0.0;
  double y_norm_sq = 0.0;
};

struct CertificateTolerance {
  double equality = 1e-8;  // relative to ||y||^2
  double slack = 1e-8;     // relative slack on each inequality
};

struct CertificateCheck {
  bool equality = true;
  bool beta_gap = true;
  bool z_bound = true;
  bool residual_perp = true;

  bool ok() const noexcept { return equality && beta_gap && z_bound && residual_perp; }
  int violation_count() const noexcept {
    return static_cast<int>(!equality) + !beta_gap + !z_bound + !residual_perp;
  }
};

CertificateCheck check(const CertificateReport& report, const CertificateTolerance& tol = {});

/// Solve min ||S y - S X beta|| via column-pivoted QR of SX (O(c d^2)); falls
/// back to the SVD minimum-norm solution when SX is rank deficient.
SketchedSolution solve_sketched(const RegressionProblem& problem, const SketchOperator& op);

/// ||y - X beta_tilde||^2 / ||y - X beta_lsr||^2. Both residuals below
/// 1e-12 ||y||^2 give 1; only the exact one below gives +inf.
double error_ratio(double exact_residual_sq, double sketched_residual_sq, double y_norm_sq);
double error_ratio(const PreparedProblem& prepared, const SketchedSolution& solution);

CertificateReport certify(const PreparedProblem& prepared, const SketchOperator& op,
                          const SketchedSolution& solution);

struct SamplerConfig {
  SketchKind kind = SketchKind::leverage;
  std::size_t c = 0;
  LeverageWeighting weighting = LeverageWeighting::inverse_sqrt;
};

SketchOperator draw_sketch(const SamplerConfig& config, const PreparedProblem& prepared,
                           SeededRng& rng);

struct BestOfT {
  SketchedSolution best;
  std::size_t best_index = 0;
  double best_ratio = 0.0;
  std::vector<double> ratios;  // +inf for trials that threw
};

/// Runs t independent sketches; trial j uses SeededRng(rng.seed(), rng.stream() + j)
/// so trial 0 replays a single solve with `rng`. The winner minimizes the full
/// residual. Throws the last trial error only if every trial failed.
BestOfT best_of_t(const PreparedProblem& prepared, const SamplerConfig& config, std::size_t t,
                  const SeededRng& rng);

}  // namespace sketchlsr
