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

// Closed-form sample-size thresholds and tail bounds for sketched least
// squares. All functions are pure; DomainError on inputs outside the stated
// domain.

namespace sketchlsr::bounds {

/// Leverage-score sampling: ceil(max{c_lnd * d * ln d, 400 d / eps}).
/// The d ln d term has no published constant; c_lnd is that constant.
/// eps must lie in (0, 1].
std::size_t leverage_sampling_size(std::size_t d, double eps, double c_lnd = 20.0);

/// Uniform sampling: ceil(1000 * mu * d * (ln d + 7)).
std::size_t uniform_sampling_size(std::size_t d, double mu);

/// Uniform sampling, general form before rounding the constants:
///   ceil(max{ mu d ln(d/delta1) / (theta1 ln theta1 - theta1 + 1),
///             mu d ln(d/delta2) / (theta2 ln theta2 - theta2 + 1) })
/// with theta1 in (0,1), theta2 > 1, delta in (0,1).
std::size_t uniform_sampling_size_general(std::size_t d, double mu, double theta1, double theta2,
                                          double delta1, double delta2);

// Constants that turn the general uniform-sampling size into the rounded rule.
inline constexpr double kUniformTheta1 = 0.9556;
inline constexpr double kUniformTheta2 = 1.045;
inline constexpr double kUniformDelta12 = 0.0015;
inline constexpr double kUniformDelta3 = 0.947;

enum class ChernoffSide { lower, upper };

/// Sum of c PSD d x d matrices sampled without replacement, each with
/// lambda_max <= R; xi_min / xi_max are c times the extreme eigenvalues of
/// the mean summand.
struct ChernoffParams {
  double theta1 = 0.5;  // (0, 1]
  double theta2 = 2.0;  // > 1
  double R = 1.0;
  double xi_min = 1.0;
  double xi_max = 1.0;
  std::size_t d = 1;
};

/// lower: P{lambda_min <= theta1 xi_min} <= d [e^(theta1-1) / theta1^theta1]^(xi_min/R)
/// upper: P{lambda_max >= theta2 xi_max} <= d [e^(theta2-1) / theta2^theta2]^(xi_max/R)
/// Evaluated in log space and returned unclamped (may exceed 1).
double chernoff_tail(const ChernoffParams& params, ChernoffSide side);
/// Natural log of chernoff_tail.
double log_chernoff_tail(const ChernoffParams& params, ChernoffSide side);

/// theta ln theta - theta + 1 (> 0 for theta != 1).
double chernoff_rate(double theta);

enum class MatmulVariant { frobenius, spectral };

/// Expected sampled matrix-product error:
///   frobenius: ||X||_F ||Y||_F / sqrt(c)
///   spectral:  c_spec * sqrt(ln c / c) * ||X||_2 ||X||_F   (c >= 2)
double matmul_expected_bound(double x_fro, double y_fro, double x_spec, std::size_t c,
                             MatmulVariant variant, double c_spec = 1.0);

/// scale * kappa^2 * (gamma^-2 - 1) * ||beta||^2; +inf at gamma = 0.
/// scale is eps for leverage sampling and 1.2 for uniform sampling.
double beta_error_bound(double scale, double kappa, double gamma, double beta_norm);

/// 1 - 0.95^t: success probability of best-of-t when one run succeeds w.p. 0.05.
double boost_success(std::size_t t);

}  // namespace sketchlsr::bounds
