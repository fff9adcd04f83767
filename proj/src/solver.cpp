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

#include "sketchlsr/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "eigen_interop.hpp"
#include "sketchlsr/errors.hpp"

namespace sketchlsr {
namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

Vector subtract(std::span<const double> a, std::span<const double> b) {
  Vector out(a.begin(), a.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

}  // namespace

PreparedProblem prepare(RegressionProblem problem) {
  ThinSvd svd = thin_svd(problem.X());
  require_full_column_rank(svd);
  LeverageProfile leverage = leverage_scores(svd);
  ExactSolution exact = exact_lsr(problem, svd);
  const double y_norm_sq = squared_norm(problem.y());
  const double g = y_norm_sq > 0.0 ? gamma(problem, svd) : 1.0;
  const double kappa = condition_number(svd);
  return PreparedProblem{std::move(problem), std::move(svd), std::move(leverage), std::move(exact),
                         g, kappa, y_norm_sq};
}

SketchedSolution solve_sketched(const RegressionProblem& problem, const SketchOperator& op) {
  if (op.n != problem.n()) {
    throw DomainError("sketch built for n=" + std::to_string(op.n) + " applied to n=" +
                      std::to_string(problem.n()));
  }
  const std::size_t d = problem.d();

  SketchedSolution out;
  out.sketch_kind = op.kind;

  const auto t0 = Clock::now();
  const DenseMatrix joint = apply_sketch(op, problem.X(), problem.y());
  const auto t1 = Clock::now();
  out.apply_time = t1 - t0;

  out.c_realized = joint.rows();
  if (out.c_realized == 0) throw DomainError("sketch has no rows");

  const auto view = detail::as_eigen(joint);
  const Eigen::MatrixXd a = view.leftCols(static_cast<Eigen::Index>(d));
  const Eigen::VectorXd b = view.col(static_cast<Eigen::Index>(d));
  const double tol = rank_tolerance(out.c_realized, d);

  Eigen::VectorXd beta;
  bool solved = false;
  if (out.c_realized >= d) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(tol);
    if (qr.rank() == static_cast<Eigen::Index>(d)) {
      beta = qr.solve(b);
      solved = true;
    }
  }
  if (!solved) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(tol);
    beta = svd.solve(b);
    out.rank_deficient = true;
  }
  out.solve_time = Clock::now() - t1;

  out.residual_sq_sketched = (b - a * beta).squaredNorm();
  out.beta_tilde = detail::to_vector(beta);
  out.residual_sq_full = residual_sq(problem, out.beta_tilde);
  return out;
}

double error_ratio(double exact_residual_sq, double sketched_residual_sq, double y_norm_sq) {
  const double tol = 1e-12 * y_norm_sq;
  if (exact_residual_sq <= tol) return sketched_residual_sq <= tol ? 1.0 : kInf;
  return sketched_residual_sq / exact_residual_sq;
}

double error_ratio(const PreparedProblem& prepared, const SketchedSolution& solution) {
  return error_ratio(prepared.exact.residual_sq, solution.residual_sq_full, prepared.y_norm_sq);
}

CertificateReport certify(const PreparedProblem& prepared, const SketchOperator& op,
                          const SketchedSolution& solution) {
  const RegressionProblem& problem = prepared.problem;
  const ThinSvd& svd = prepared.svd;
  const std::size_t d = problem.d();
  if (solution.beta_tilde.size() != d) throw DomainError("certify: solution has wrong length");

  CertificateReport rep;
  rep.y_norm_sq = prepared.y_norm_sq;
  rep.sigma_min_X = svd.sigma_min();

  const Vector residual = subtract(problem.y(), multiply(problem.X(), prepared.exact.beta));

  // (SU | S r) in one pass; nothing of size n x (n - d) is formed.
  const DenseMatrix joint = apply_sketch(op, svd.U, residual);
  const auto view = detail::as_eigen(joint);
  const Eigen::MatrixXd su = view.leftCols(static_cast<Eigen::Index>(d));
  const Eigen::VectorXd sr = view.col(static_cast<Eigen::Index>(d));

  if (su.rows() > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> sv(su);
    const Eigen::VectorXd s = sv.singularValues();
    rep.sigma_max_SU = s.size() > 0 ? s(0) : 0.0;
    rep.sigma_min_SU = su.rows() >= static_cast<Eigen::Index>(d) ? s(s.size() - 1) : 0.0;
  }
  rep.cross_term = (su.transpose() * sr).norm();

  const Vector delta = subtract(prepared.exact.beta, solution.beta_tilde);
  const Vector x_delta = multiply(problem.X(), delta);
  const Vector z = multiply_transposed(svd.U, x_delta);
  rep.z_norm = norm2(z);
  rep.uz_norm_sq = squared_norm(multiply(svd.U, z));
  rep.equality_gap =
      std::abs(solution.residual_sq_full - prepared.exact.residual_sq - rep.uz_norm_sq);

  const bool su_singular = rep.sigma_min_SU <= rank_tolerance(su.rows(), d) * rep.sigma_max_SU ||
                           rep.sigma_min_SU == 0.0;
  rep.z_bound = su_singular ? kInf : rep.cross_term / (rep.sigma_min_SU * rep.sigma_min_SU);

  rep.beta_gap_sq = squared_norm(delta);
  rep.beta_gap_bound = rep.uz_norm_sq / (svd.sigma_min() * svd.sigma_min());

  rep.residual_perp_sq = squared_norm(residual);
  const double g = prepared.gamma;
  rep.residual_perp_bound = g > 0.0 ? svd.sigma_max() * svd.sigma_max() * (1.0 / (g * g) - 1.0) *
                                          squared_norm(prepared.exact.beta)
                                    : kInf;
  return rep;
}

CertificateCheck check(const CertificateReport& r, const CertificateTolerance& tol) {
  const double s = tol.slack;
  const double y2 = r.y_norm_sq;
  CertificateCheck out;
  out.equality = r.equality_gap <= tol.equality * y2;
  // Coefficients live on the scale ||y|| / sigma_min(X).
  const double beta_floor = s * y2 / (r.sigma_min_X * r.sigma_min_X);
  out.beta_gap = r.beta_gap_sq <= r.beta_gap_bound * (1.0 + s) + beta_floor;
  out.z_bound = r.z_norm <= r.z_bound * (1.0 + s) + s * std::sqrt(y2);
  out.residual_perp = r.residual_perp_sq <= r.residual_perp_bound * (1.0 + s) + s * y2;
  return out;
}

SketchOperator draw_sketch(const SamplerConfig& config, const PreparedProblem& prepared,
                           SeededRng& rng) {
  const std::size_t n = prepared.problem.n();
  switch (config.kind) {
    case SketchKind::leverage: {
      const Vector p = leverage_probabilities(prepared.leverage, config.c);
      LeverageSketchOptions options;
      options.weighting = config.weighting;
      options.c_target = config.c;
      return draw_leverage_sketch(p, rng, options);
    }
    case SketchKind::uniform:
      return draw_uniform_sketch(n, config.c, rng);
    case SketchKind::srht:
      return draw_srht(n, config.c, rng);
    case SketchKind::sparse_embedding:
      return draw_sparse_embedding(n, config.c, rng);
  }
  throw DomainError("draw_sketch: unknown sketch kind");
}

BestOfT best_of_t(const PreparedProblem& prepared, const SamplerConfig& config, std::size_t t,
                  const SeededRng& rng) {
  if (t == 0) throw DomainError("best_of_t needs t >= 1");
  BestOfT out;
  out.ratios.assign(t, kInf);
  std::exception_ptr last_error;
  bool have_best = false;

  for (std::size_t j = 0; j < t; ++j) {
    SeededRng trial_rng(rng.seed(), rng.stream() + j);
    try {
      const SketchOperator op = draw_sketch(config, prepared, trial_rng);
      SketchedSolution sol = solve_sketched(prepared.problem, op);
      out.ratios[j] = error_ratio(prepared, sol);
      if (!have_best || sol.residual_sq_full < out.best.residual_sq_full) {
        out.best = std::move(sol);
        out.best_index = j;
        out.best_ratio = out.ratios[j];
        have_best = true;
      }
    } catch (const Error&) {
      last_error = std::current_exception();
    }
  }
  if (!have_best) std::rethrow_exception(last_error);
  return out;
}

}  // namespace sketchlsr
