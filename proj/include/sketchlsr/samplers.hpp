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
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "sketchlsr/dense_matrix.hpp"
#include "sketchlsr/linalg.hpp"
#include "sketchlsr/rng.hpp"

namespace sketchlsr {

enum class SketchKind { leverage, uniform, srht, sparse_embedding };

std::string_view to_string(SketchKind kind);
/// Accepts "leverage", "uniform", "srht", "sparse" / "sparse_embedding".
SketchKind parse_sketch_kind(std::string_view name);

/// How selected rows are weighted in leverage sampling.
///  inverse_sqrt:   1/sqrt(p_i), so that E[S^T S] = I (default)
///  literal_inverse: 1/p_i, the diagonal D = diag(1/p_i) taken literally
enum class LeverageWeighting { inverse_sqrt, literal_inverse };

struct LeverageSample {
  std::vector<std::size_t> indices;  // strictly increasing
  std::vector<double> weights;       // one per index
  std::vector<double> probabilities; // full length-n vector p
  LeverageWeighting weighting = LeverageWeighting::inverse_sqrt;

  friend bool operator==(const LeverageSample&, const LeverageSample&) = default;
};

struct UniformSample {
  std::vector<std::size_t> indices;  // distinct, increasing

  friend bool operator==(const UniformSample&, const UniformSample&) = default;
};

/// S = sqrt(n2/c) R H D on the zero-padded n2 = 2^k >= n rows.
struct SrhtTransform {
  std::size_t padded_n = 0;
  std::vector<double> signs;         // +-1, length padded_n
  std::vector<std::size_t> rows;     // distinct, increasing, in [0, padded_n)
  double scale = 1.0;                // sqrt(padded_n / c)

  friend bool operator==(const SrhtTransform&, const SrhtTransform&) = default;
};

/// S = Phi D: column i has a single entry signs[i] in row buckets[i].
struct SparseEmbedding {
  std::vector<std::size_t> buckets;  // length n, values in [0, c)
  std::vector<double> signs;         // length n

  friend bool operator==(const SparseEmbedding&, const SparseEmbedding&) = default;
};

/// A realized random embedding S (c x n) in structured form.
struct SketchOperator {
  SketchKind kind = SketchKind::uniform;
  std::size_t n = 0;
  std::size_t c_target = 0;
  std::variant<LeverageSample, UniformSample, SrhtTransform, SparseEmbedding> realization;

  /// Rows of S: |C| for leverage sampling, c_target otherwise.
  std::size_t output_rows() const noexcept;

  friend bool operator==(const SketchOperator&, const SketchOperator&) = default;
};

struct LeverageSketchOptions {
  LeverageWeighting weighting = LeverageWeighting::inverse_sqrt;
  int max_retries = 16;
  /// Recorded as SketchOperator::c_target; 0 means round(sum p).
  std::size_t c_target = 0;
};

/// p_i = min{1, c * l_i / d}.
Vector leverage_probabilities(const LeverageProfile& profile, std::size_t c);

/// Independent Bernoulli(p_i) row selection. An empty draw is redrawn up to
/// max_retries times before throwing SamplingError.
SketchOperator draw_leverage_sketch(std::span<const double> probabilities, SeededRng& rng,
                                    const LeverageSketchOptions& options = {});

/// c distinct rows of I_n, uniformly over all c-subsets, unweighted.
SketchOperator draw_uniform_sketch(std::size_t n, std::size_t c, SeededRng& rng);

SketchOperator draw_srht(std::size_t n, std::size_t c, SeededRng& rng);

SketchOperator draw_sparse_embedding(std::size_t n, std::size_t c, SeededRng& rng);

/// c distinct values from [0, n) in increasing order (sparse partial
/// Fisher-Yates, O(c) memory).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t c, SeededRng& rng);

/// Normalized (orthogonal) Walsh-Hadamard transform. Length must be a power of two.
Vector fwht(std::span<const double> x);

/// Rows `selected` of H_unnormalized * block, where block is a row-major
/// rows x width matrix with rows a power of two. Cost is
/// rows*log2(L) + |selected|*rows/L for a chosen split L, which beats a full
/// transform when few rows are kept.
DenseMatrix subsampled_fwht_rows(std::span<const double> block, std::size_t rows, std::size_t width,
                                 std::span<const std::size_t> selected);

/// S * M using the structured form. M must have op.n rows.
DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& m);
/// S * [m | extra_column] without materializing the joined matrix. An empty
/// extra_column gives S * m.
DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& m,
                         std::span<const double> extra_column);
Vector apply_sketch(const SketchOperator& op, std::span<const double> v);

/// Dense c x n matrix of S. Debug/oracle use only.
DenseMatrix densify(const SketchOperator& op);

}  // namespace sketchlsr
