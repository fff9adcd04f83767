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

#include "sketchlsr/harness.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "eigen_interop.hpp"
#include "sketchlsr/errors.hpp"
#include "sketchlsr/rng.hpp"
#include "sketchlsr/samplers.hpp"

namespace sketchlsr::harness {
namespace {

using Clock = std::chrono::steady_clock;

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
  Eigen::MatrixXd g(rows, cols);
  // Row-major fill order so the draw sequence matches the row-major layout.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = rng.normal();
  }
  return g;
}

// Thin Q of a Gaussian matrix, columns signed by diag(R) so the result is
// Haar-distributed rather than biased by the Householder sign choice.
Eigen::MatrixXd random_orthonormal(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(rows, cols, rng));
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(rows, cols);
  q.applyOnTheLeft(qr.householderQ());
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

void validate_spec(const ProblemSpec& spec, const std::string& base) {
  if (spec.d == 0) throw ConfigError(base + "/d", "must be >= 1");
  if (spec.n < spec.d) throw ConfigError(base + "/n", "must be >= d");
  if (!(spec.kappa >= 1.0) || !std::isfinite(spec.kappa)) {
    throw ConfigError(base + "/kappa", "must be a finite value >= 1");
  }
  if (spec.d == 1 && spec.kappa != 1.0) {
    throw ConfigError(base + "/kappa", "a single column has condition number 1");
  }
  if (!(spec.gamma > 0.0 && spec.gamma <= 1.0)) throw ConfigError(base + "/gamma", "must be in (0, 1]");
  if (spec.gamma < 1.0 && spec.n == spec.d) {
    throw ConfigError(base + "/gamma", "gamma < 1 needs n > d (no orthogonal complement)");
  }
  if (spec.coherence == CoherenceProfile::spiked && (spec.spike_k == 0 || spec.spike_k > spec.d)) {
    throw ConfigError(base + "/spike_k", "must be in [1, d]");
  }
}

struct TrialRecord {
  double ratio = 0.0;
  std::size_t c_realized = 0;
  double wall_time_s = 0.0;
  std::size_t violations = 0;
};

TrialRecord run_trial(const PreparedProblem& prepared, const SamplerConfig& sampler,
                      std::size_t best_of, std::uint64_t seed, std::uint64_t stream) {
  TrialRecord rec;
  rec.ratio = std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  const auto start = Clock::now();
  for (std::size_t j = 0; j < best_of; ++j) {
    SeededRng rng(seed, stream + j);
    const SketchOperator op = draw_sketch(sampler, prepared, rng);
    const SketchedSolution sol = solve_sketched(prepared.problem, op);
    const CertificateCheck chk = check(certify(prepared, op, sol));
    if (!chk.equality) {
      throw CertificateViolation("residual decomposition identity failed", seed, stream + j);
    }
    rec.violations += static_cast<std::size_t>(chk.violation_count());
    if (j == 0 || sol.residual_sq_full < best_residual) {
      best_residual = sol.residual_sq_full;
      rec.ratio = error_ratio(prepared, sol);
      rec.c_realized = sol.c_realized;
    }
  }
  rec.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return rec;
}

}  // namespace

GeneratedProblem generate_problem(const ProblemSpec& spec) {
  validate_spec(spec, "/problem");
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.d);
  SeededRng rng(spec.seed, 0x9e0b1e3ULL);

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, d);
  std::size_t spikes = 0;
  if (spec.coherence == CoherenceProfile::spiked) spikes = spec.spike_k;
  if (spec.coherence == CoherenceProfile::one_hot) spikes = spec.d;

  if (spikes == 0) {
    u = random_orthonormal(n, d, rng);
  } else {
    // Spike rows hold e_0..e_{k-1}; the remaining columns live on the other rows.
    std::vector<std::size_t> spike_rows = sample_without_replacement(spec.n, spikes, rng);
    std::vector<char> is_spike(spec.n, 0);
    for (std::size_t j = 0; j < spikes; ++j) {
      u(static_cast<Eigen::Index>(spike_rows[j]), static_cast<Eigen::Index>(j)) = 1.0;
      is_spike[spike_rows[j]] = 1;
    }
    const auto rest_cols = static_cast<Eigen::Index>(spec.d - spikes);
    if (rest_cols > 0) {
      const auto rest_rows = static_cast<Eigen::Index>(spec.n - spikes);
      const Eigen::MatrixXd q = random_orthonormal(rest_rows, rest_cols, rng);
      Eigen::Index r = 0;
      for (std::size_t i = 0; i < spec.n; ++i) {
        if (is_spike[i]) continue;
        u.row(static_cast<Eigen::Index>(i)).tail(rest_cols) = q.row(r++);
      }
    }
  }

  Eigen::VectorXd sigma(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double t = d == 1 ? 0.0 : static_cast<double>(d - 1 - i) / static_cast<double>(d - 1);
    sigma(i) = std::pow(spec.kappa, t);
  }
  const Eigen::MatrixXd v = random_orthonormal(d, d, rng);
  const Eigen::MatrixXd x = u * sigma.asDiagonal() * v.transpose();

  Eigen::VectorXd beta(d);
  for (Eigen::Index j = 0; j < d; ++j) beta(j) = rng.normal();
  const Eigen::VectorXd signal = x * beta;
  Eigen::VectorXd y = signal;
  if (spec.gamma < 1.0) {
    Eigen::VectorXd g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = rng.normal();
    const Eigen::VectorXd w = g - u * (u.transpose() * g);
    const double w_norm = w.norm();
    if (w_norm == 0.0) throw DomainError("generate_problem: degenerate noise direction");
    const double alpha =
        signal.norm() * std::sqrt(1.0 / (spec.gamma * spec.gamma) - 1.0) / w_norm;
    y += alpha * w;
  }

  RegressionProblem problem(detail::to_dense(x), detail::to_vector(y));
  const ThinSvd svd = thin_svd(problem.X());
  GeneratedProblem out{std::move(problem), detail::to_vector(beta), 1.0, 1.0, 1.0};
  out.achieved_mu = leverage_scores(svd).coherence;
  out.achieved_gamma = gamma(out.problem, svd);
  out.achieved_kappa = condition_number(svd);
  return out;
}

double success_threshold(const ExperimentConfig& config) {
  if (config.success_threshold) return *config.success_threshold;
  return config.sampler.kind == SketchKind::uniform ? 2.2 : 1.0 + config.eps;
}

void validate(const ExperimentConfig& config) {
  validate_spec(config.problem, "/problem");
  if (config.trials == 0) throw ConfigError("/trials", "must be >= 1");
  if (config.best_of == 0) throw ConfigError("/best_of", "must be >= 1");
  if (!(config.eps > 0.0) || !std::isfinite(config.eps)) throw ConfigError("/eps", "must be > 0");
  if (config.success_threshold && !(*config.success_threshold >= 1.0)) {
    throw ConfigError("/success_threshold", "must be >= 1");
  }
  if (config.c_grid.empty()) throw ConfigError("/c_grid", "must not be empty");
  const bool bounded = config.sampler.kind == SketchKind::uniform ||
                       config.sampler.kind == SketchKind::srht;
  for (std::size_t i = 0; i < config.c_grid.size(); ++i) {
    const std::size_t c = config.c_grid[i];
    const std::string ptr = "/c_grid/" + std::to_string(i);
    if (c == 0) throw ConfigError(ptr, "must be >= 1");
    if (bounded && c > config.problem.n) {
      throw ConfigError(ptr, "c = " + std::to_string(c) + " exceeds n = " +
                                 std::to_string(config.problem.n) + " for sampling without replacement");
    }
  }
}

Quantiles quantiles(const std::vector<double>& sorted) {
  if (sorted.empty()) throw DomainError("quantiles of an empty sample");
  auto at = [&](double q) {
    const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
  };
  return Quantiles{at(0.5), at(0.9), at(0.99), sorted.back()};
}

SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw DomainError("wilson_interval: no trials");
  if (successes > trials) throw DomainError("wilson_interval: successes exceed trials");
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return SuccessEstimate{p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

SuccessEstimate estimate_success_rate(const TrialStats& stats, std::size_t c) {
  for (const CStats& s : stats.per_c) {
    if (s.c == c) return wilson_interval(s.success_count, s.trials);
  }
  throw DomainError("c = " + std::to_string(c) + " is not in the experiment grid");
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        // Keep the lowest failing index so the reported error is schedule independent.
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

TrialStats run_experiment(const ExperimentConfig& config, std::size_t threads) {
  validate(config);
  GeneratedProblem generated = generate_problem(config.problem);
  const PreparedProblem prepared = prepare(std::move(generated.problem));
  return run_experiment(config, prepared, threads);
}

TrialStats run_experiment(const ExperimentConfig& config, const PreparedProblem& prepared,
                          std::size_t threads) {
  validate(config);
  if (prepared.problem.n() != config.problem.n || prepared.problem.d() != config.problem.d) {
    throw ConfigError("/problem", "prepared problem does not match the configured shape");
  }
  const std::size_t grid = config.c_grid.size();
  const std::size_t trials = config.trials;
  std::vector<TrialRecord> records(grid * trials);

  parallel_for(records.size(), threads, [&](std::size_t task) {
    const std::size_t ci = task / trials;
    const std::size_t trial = task % trials;
    SamplerConfig sampler = config.sampler;
    sampler.c = config.c_grid[ci];
    records[task] = run_trial(prepared, sampler, config.best_of, config.master_seed,
                              derive_stream(config.master_seed, ci, trial));
  });

  TrialStats stats;
  stats.achieved_mu = prepared.leverage.coherence;
  stats.achieved_gamma = prepared.gamma;
  stats.achieved_kappa = prepared.kappa;
  stats.threshold = success_threshold(config);

  for (std::size_t ci = 0; ci < grid; ++ci) {
    CStats s;
    s.c = config.c_grid[ci];
    s.trials = trials;
    s.ratios.reserve(trials);
    double realized = 0.0;
    double wall = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialRecord& r = records[ci * trials + t];
      s.ratios.push_back(r.ratio);
      if (r.ratio <= stats.threshold) ++s.success_count;
      realized += static_cast<double>(r.c_realized);
      wall += r.wall_time_s;
      s.certificate_violations += r.violations;
    }
    std::vector<double> sorted = s.ratios;
    std::sort(sorted.begin(), sorted.end());
    s.ratio = quantiles(sorted);
    s.mean_c_realized = realized / static_cast<double>(trials);
    s.mean_wall_time_s = wall / static_cast<double>(trials);
    if (config.sampler.kind == SketchKind::leverage) {
      const Vector p = leverage_probabilities(prepared.leverage, s.c);
      s.expected_c_realized = std::accumulate(p.begin(), p.end(), 0.0);
    } else {
      s.expected_c_realized = static_cast<double>(s.c);
    }
    const SuccessEstimate est = wilson_interval(s.success_count, s.trials);
    s.wilson_low = est.low;
    s.wilson_high = est.high;
    stats.per_c.push_back(std::move(s));
  }
  return stats;
}

}  // namespace sketchlsr::harness
