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

#include "sketchlsr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sketchlsr/errors.hpp"

namespace sketchlsr::bounds {
namespace {

// ceil that ignores representation noise: 400*20/0.5 must give 16000, not 16001.
std::size_t ceil_count(double x) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("sample size is not a finite count");
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

void require(bool cond, const char* what) {
  if (!cond) throw DomainError(what);
}

}  // namespace

std::size_t leverage_sampling_size(std::size_t d, double eps, double c_lnd) {
  require(d >= 1, "leverage_sampling_size: d must be >= 1");
  require(std::isfinite(eps) && eps > 0.0 && eps <= 1.0, "leverage_sampling_size: eps must be in (0, 1]");
  require(std::isfinite(c_lnd) && c_lnd >= 0.0, "leverage_sampling_size: c_lnd must be >= 0");
  const double dd = static_cast<double>(d);
  return ceil_count(std::max(c_lnd * dd * std::log(dd), 400.0 * dd / eps));
}

std::size_t uniform_sampling_size(std::size_t d, double mu) {
  require(d >= 1, "uniform_sampling_size: d must be >= 1");
  require(std::isfinite(mu) && mu >= 1.0, "uniform_sampling_size: mu must be >= 1");
  const double dd = static_cast<double>(d);
  return ceil_count(1000.0 * mu * dd * (std::log(dd) + 7.0));
}

double chernoff_rate(double theta) {
  require(std::isfinite(theta) && theta > 0.0, "chernoff_rate: theta must be > 0");
  return theta * std::log(theta) - theta + 1.0;
}

std::size_t uniform_sampling_size_general(std::size_t d, double mu, double theta1, double theta2,
                                          double delta1, double delta2) {
  require(d >= 1, "uniform_sampling_size_general: d must be >= 1");
  require(std::isfinite(mu) && mu >= 1.0, "uniform_sampling_size_general: mu must be >= 1");
  require(theta1 > 0.0 && theta1 < 1.0, "uniform_sampling_size_general: theta1 must be in (0, 1)");
  require(theta2 > 1.0 && std::isfinite(theta2), "uniform_sampling_size_general: theta2 must be > 1");
  require(delta1 > 0.0 && delta1 < 1.0, "uniform_sampling_size_general: delta1 must be in (0, 1)");
  require(delta2 > 0.0 && delta2 < 1.0, "uniform_sampling_size_general: delta2 must be in (0, 1)");
  const double rate1 = chernoff_rate(theta1);
  const double rate2 = chernoff_rate(theta2);
  require(rate1 > 0.0 && rate2 > 0.0, "uniform_sampling_size_general: degenerate theta");
  const double dd = static_cast<double>(d);
  const double lower = mu * dd * std::log(dd / delta1) / rate1;
  const double upper = mu * dd * std::log(dd / delta2) / rate2;
  return ceil_count(std::max(lower, upper));
}

namespace {

// (xi / R) * chernoff_rate(theta) for the requested side, after validation.
double chernoff_exponent(const ChernoffParams& p, ChernoffSide side) {
  require(p.d >= 1, "chernoff_tail: d must be >= 1");
  require(p.R > 0.0 && std::isfinite(p.R), "chernoff_tail: R must be > 0");
  const double theta = side == ChernoffSide::lower ? p.theta1 : p.theta2;
  const double xi = side == ChernoffSide::lower ? p.xi_min : p.xi_max;
  require(xi > 0.0 && std::isfinite(xi), "chernoff_tail: xi must be > 0");
  if (side == ChernoffSide::lower) {
    require(theta > 0.0 && theta <= 1.0, "chernoff_tail: theta1 must be in (0, 1]");
  } else {
    require(theta > 1.0 && std::isfinite(theta), "chernoff_tail: theta2 must be > 1");
  }
  // [e^(theta-1) / theta^theta]^(xi/R) = exp(-(xi/R) * chernoff_rate(theta))
  return (xi / p.R) * chernoff_rate(theta);
}

}  // namespace

double log_chernoff_tail(const ChernoffParams& p, ChernoffSide side) {
  const double exponent = chernoff_exponent(p, side);
  return std::log(static_cast<double>(p.d)) - exponent;
}

double chernoff_tail(const ChernoffParams& p, ChernoffSide side) {
  const double exponent = chernoff_exponent(p, side);
  return static_cast<double>(p.d) * std::exp(-exponent);
}

double matmul_expected_bound(double x_fro, double y_fro, double x_spec, std::size_t c,
                             MatmulVariant variant, double c_spec) {
  require(x_fro >= 0.0 && y_fro >= 0.0 && x_spec >= 0.0, "matmul_expected_bound: norms must be >= 0");
  const double cc = static_cast<double>(c);
  if (variant == MatmulVariant::frobenius) {
    require(c >= 1, "matmul_expected_bound: c must be >= 1");
    return x_fro * y_fro / std::sqrt(cc);
  }
  require(c >= 2, "matmul_expected_bound: spectral variant needs c >= 2");
  return c_spec * std::sqrt(std::log(cc) / cc) * x_spec * x_fro;
}

double beta_error_bound(double scale, double kappa, double gamma, double beta_norm) {
  require(gamma >= 0.0 && gamma <= 1.0, "beta_error_bound: gamma must be in [0, 1]");
  require(kappa >= 1.0, "beta_error_bound: kappa must be >= 1");
  if (gamma == 0.0) return std::numeric_limits<double>::infinity();
  return scale * kappa * kappa * (1.0 / (gamma * gamma) - 1.0) * beta_norm * beta_norm;
}

double boost_success(std::size_t t) {
  // Same value as 1 - 0.95^t without the cancellation at small t.
  return -std::expm1(static_cast<double>(t) * std::log1p(-0.05));
}

}  // namespace sketchlsr::bounds
