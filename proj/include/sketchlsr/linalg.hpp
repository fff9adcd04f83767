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
#include <span>

#include "sketchlsr/dense_matrix.hpp"

namespace sketchlsr {

/// Overdetermined least-squares problem min ||y - X beta||^2 with n >= d >= 1.
///
/// Construction checks shapes and finiteness only. Full column rank is
/// checked where it matters (exact_lsr, condition_number) because it needs
/// the singular values.
class RegressionProblem {
 public:
  RegressionProblem(DenseMatrix x, Vector y);

  const DenseMatrix& X() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  std::size_t n() const noexcept { return x_.rows(); }
  std::size_t d() const noexcept { return x_.cols(); }

 private:
  DenseMatrix x_;
  Vector y_;
};

/// X = U diag(sigma) V^T with U n x d orthonormal, V d x d orthogonal and
/// sigma nonincreasing. Each U column is signed so that its largest-magnitude
/// entry is positive (V follows), which makes the factors reproducible.
struct ThinSvd {
  DenseMatrix U;
  Vector sigma;
  DenseMatrix V;

  std::size_t n() const noexcept { return U.rows(); }
  std::size_t d() const noexcept { return U.cols(); }
  double sigma_max() const noexcept { return sigma.front(); }
  double sigma_min() const noexcept { return sigma.back(); }
};

struct LeverageProfile {
  Vector scores;       // l_i = ||U row i||^2, sums to d
  std::size_t d = 0;
  double coherence = 1.0;  // (n/d) * max_i l_i, in [1, n/d]
};

struct ExactSolution {
  Vector beta;
  double residual_sq = 0.0;
};

/// Relative rank threshold: full rank iff sigma_min > rank_tolerance(n,d) * sigma_max.
double rank_tolerance(std::size_t n, std::size_t d) noexcept;
bool has_full_column_rank(const ThinSvd& svd) noexcept;
/// Throws RankError carrying sigma_min / sigma_max.
void require_full_column_rank(const ThinSvd& svd);

/// Throws DomainError for n < d or non-finite input, FactorizationError when
/// the factorization does not converge.
ThinSvd thin_svd(const DenseMatrix& x);

/// beta = V diag(1/sigma) U^T y. Throws RankError on rank deficiency.
ExactSolution exact_lsr(const RegressionProblem& problem, const ThinSvd& svd);
ExactSolution exact_lsr(const RegressionProblem& problem);

LeverageProfile leverage_scores(const ThinSvd& svd);
/// (n/d) * max_i l_i for an arbitrary score vector.
double coherence(std::span<const double> scores, std::size_t d);

/// ||U U^T y|| / ||y||, the largest admissible gamma. Throws DomainError for y = 0.
double gamma(const RegressionProblem& problem, const ThinSvd& svd);

double condition_number(const ThinSvd& svd);

/// y - U (U^T y), i.e. the component of y orthogonal to range(X).
Vector orthogonal_residual(const RegressionProblem& problem, const ThinSvd& svd);

/// ||y - X beta||^2
double residual_sq(const RegressionProblem& problem, std::span<const double> beta);

}  // namespace sketchlsr
