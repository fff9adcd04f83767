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
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sketchlsr/linalg.hpp"
#include "sketchlsr/solver.hpp"

namespace sketchlsr::harness {

enum class CoherenceProfile {
  incoherent,  // orthonormalized Gaussian U
  spiked,      // k rows of U are standard basis vectors (leverage 1)
  one_hot,     // spiked with k = d, coherence n/d
};

struct ProblemSpec {
  std::size_t n = 1024;
  std::size_t d = 8;
  CoherenceProfile coherence = CoherenceProfile::incoherent;
  std::size_t spike_k = 1;  // used by spiked only
  double kappa = 10.0;      // >= 1; singular values log-spaced in [1, kappa]
  double gamma = 0.9;       // (0, 1]
  std::uint64_t seed = 0;
};

struct GeneratedProblem {
  RegressionProblem problem;
  Vector beta_star;
  double achieved_mu = 1.0;
  double achieved_gamma = 1.0;
  double achieved_kappa = 1.0;
};

/// X = U diag(sigma) V^T, y = X beta* + w with w orthogonal to range(X) and
/// scaled so that ||U U^T y|| / ||y|| equals spec.gamma.
GeneratedProblem generate_problem(const ProblemSpec& spec);

struct ExperimentConfig {
  ProblemSpec problem;
  SamplerConfig sampler;  // sampler.c is ignored; c comes from c_grid
  std::vector<std::size_t> c_grid;
  std::size_t trials = 100;
  double eps = 0.5;
  /// Defaults to 2.2 for uniform sampling and 1 + eps otherwise.
  std::optional<double> success_threshold;
  std::uint64_t master_seed = 0;
  /// Each trial keeps the best of this many sketches.
  std::size_t best_of = 1;
};

double success_threshold(const ExperimentConfig& config);

/// Throws DomainError naming the offending field.
void validate(const ExperimentConfig& config);

struct Quantiles {
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  double max = 0.0;
};

/// Nearest-rank quantiles; `sorted` must be ascending and nonempty.
Quantiles quantiles(const std::vector<double>& sorted);

struct CStats {
  std::size_t c = 0;
  std::size_t success_count = 0;
  std::size_t trials = 0;
  Quantiles ratio;
  double mean_c_realized = 0.0;
  double expected_c_realized = 0.0;  // sum p_i for leverage sampling, else c
  double mean_wall_time_s = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 1.0;
  std::size_t certificate_violations = 0;  // inequality violations; expected zero
  std::vector<double> ratios;              // per trial, in trial order
};

struct TrialStats {
  std::vector<CStats> per_c;
  double achieved_mu = 1.0;
  double achieved_gamma = 1.0;
  double achieved_kappa = 1.0;
  double threshold = 0.0;
};

/// For each c in the grid, runs `trials` sketch-solve-certify trials with
/// stream derive_stream(master_seed, c_index, trial). Output does not
/// depend on `threads`. A certificate equality failure throws
/// CertificateViolation.
TrialStats run_experiment(const ExperimentConfig& config, std::size_t threads = 1);
/// Same, on an already prepared problem.
TrialStats run_experiment(const ExperimentConfig& config, const PreparedProblem& prepared,
                          std::size_t threads = 1);

struct SuccessEstimate {
  double rate = 0.0;
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval at 95% (z = 1.959963984540054).
SuccessEstimate wilson_interval(std::size_t successes, std::size_t trials);
/// Throws DomainError when c is not in the grid.
SuccessEstimate estimate_success_rate(const TrialStats& stats, std::size_t c);

/// Calls body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sketchlsr::harness
