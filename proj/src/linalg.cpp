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

#include "sketchlsr/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "eigen_interop.hpp"
#include "sketchlsr/errors.hpp"
#include "sketchlsr/simd/kernels.hpp"

namespace sketchlsr {

RegressionProblem::RegressionProblem(DenseMatrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.cols() == 0 || x_.rows() < x_.cols()) {
    throw DomainError("regression problem needs n >= d >= 1, got " + std::to_string(x_.rows()) +
                      "x" + std::to_string(x_.cols()));
  }
  if (y_.size() != x_.rows()) {
    throw DomainError("response length " + std::to_string(y_.size()) + " does not match n = " +
                      std::to_string(x_.rows()));
  }
  if (!x_.all_finite()) throw DomainError("design matrix has non-finite entries");
  for (double v : y_) {
    if (!std::isfinite(v)) throw DomainError("response has non-finite entries");
  }
}

double rank_tolerance(std::size_t n, std::size_t d) noexcept {
  return 1e-12 * static_cast<double>(std::max(n, d));
}

bool has_full_column_rank(const ThinSvd& svd) noexcept {
  return svd.sigma_min() > rank_tolerance(svd.n(), svd.d()) * svd.sigma_max();
}

void require_full_column_rank(const ThinSvd& svd) {
  if (!has_full_column_rank(svd)) {
    const double ratio = svd.sigma_max() > 0.0 ? svd.sigma_min() / svd.sigma_max() : 0.0;
    throw RankError("matrix is rank deficient: sigma_min/sigma_max = " + std::to_string(ratio),
                    ratio);
  }
}

ThinSvd thin_svd(const DenseMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (d == 0 || n < d) {
    throw DomainError("thin_svd needs n >= d >= 1, got " + std::to_string(n) + "x" +
                      std::to_string(d));
  }
  if (!x.all_finite()) throw DomainError("thin_svd: matrix has non-finite entries");

  // Tall case: QR first, then an SVD of the small triangular factor.
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(detail::as_eigen(x));
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(rows, cols);
  q.applyOnTheLeft(qr.householderQ());

  Eigen::JacobiSVD<Eigen::MatrixXd> small(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (small.info() != Eigen::Success) throw FactorizationError("SVD did not converge", n, d);

  Eigen::MatrixXd u = q * small.matrixU();
  Eigen::MatrixXd v = small.matrixV();
  const Eigen::VectorXd s = small.singularValues();

  for (Eigen::Index j = 0; j < cols; ++j) {
    Eigen::Index arg = 0;
    u.col(j).cwiseAbs().maxCoeff(&arg);
    if (u(arg, j) < 0.0) {
      u.col(j) = -u.col(j);
      v.col(j) = -v.col(j);
    }
  }
  if (!u.allFinite() || !s.allFinite()) throw FactorizationError("SVD produced non-finite factors", n, d);

  return ThinSvd{detail::to_dense(u), detail::to_vector(s), detail::to_dense(v)};
}

ExactSolution exact_lsr(const RegressionProblem& problem, const ThinSvd& svd) {
  require_full_column_rank(svd);
  Vector coords = multiply_transposed(svd.U, problem.y());
  for (std::size_t j = 0; j < coords.size(); ++j) coords[j] /= svd.sigma[j];
  ExactSolution out;
  out.beta = multiply(svd.V, coords);
  out.residual_sq = residual_sq(problem, out.beta);
  return out;
}

ExactSolution exact_lsr(const RegressionProblem& problem) {
  return exact_lsr(problem, thin_svd(problem.X()));
}

double coherence(std::span<const double> scores, std::size_t d) {
  if (scores.empty() || d == 0) throw DomainError("coherence of an empty profile");
  const double max_score = *std::max_element(scores.begin(), scores.end());
  return static_cast<double>(scores.size()) / static_cast<double>(d) * max_score;
}

LeverageProfile leverage_scores(const ThinSvd& svd) {
  const auto& k = simd::active();
  LeverageProfile out;
  out.d = svd.d();
  out.scores.resize(svd.n());
  for (std::size_t i = 0; i < svd.n(); ++i) {
    out.scores[i] = k.sum_squares(svd.U.row(i).data(), svd.d());
  }
  out.coherence = coherence(out.scores, out.d);
  return out;
}

double gamma(const RegressionProblem& problem, const ThinSvd& svd) {
  const double y_norm = norm2(problem.y());
  if (y_norm == 0.0) throw DomainError("gamma is undefined for y = 0");
  const Vector projection = multiply(svd.U, multiply_transposed(svd.U, problem.y()));
  return std::min(1.0, norm2(projection) / y_norm);
}

double condition_number(const ThinSvd& svd) {
  require_full_column_rank(svd);
  return svd.sigma_max() / svd.sigma_min();
}

Vector orthogonal_residual(const RegressionProblem& problem, const ThinSvd& svd) {
  const Vector projection = multiply(svd.U, multiply_transposed(svd.U, problem.y()));
  Vector out = problem.y();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= projection[i];
  return out;
}

double residual_sq(const RegressionProblem& problem, std::span<const double> beta) {
  if (beta.size() != problem.d()) throw DomainError("coefficient length does not match d");
  const auto& k = simd::active();
  const DenseMatrix& x = problem.X();
  double acc = 0.0;
  for (std::size_t i = 0; i < problem.n(); ++i) {
    const double r = problem.y()[i] - k.dot(x.row(i).data(), beta.data(), beta.size());
    acc += r * r;
  }
  return acc;
}

}  // namespace sketchlsr
